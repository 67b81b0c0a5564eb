import math
from fractions import Fraction

import pytest

from partent.algebras import Algebra, independent_with_profile
from partent.entropies import (
    Combo,
    EntropySpec,
    Hartley,
    InfoIntegral,
    MaxInfo,
    MinInfo,
    Renyi,
    Shannon,
    Variance,
    additivity_residual,
    cgf,
    eval_entropy,
    information_function,
    shannon_plus_info,
)
from partent.errors import AlphaOneError, NotIndependentError, SpecFormatError
from partent.measure_space import MSet, SignedMeasure
from partent.sampling import random_algebra, random_independent_pair, rng_from_seed

F = Fraction

HALVES = Algebra.equipartition(2)
QUARTER_REST = Algebra((MSet.interval(0, "1/4"), MSet.interval("1/4", 1)))


class TestInformationFunction:
    def test_halves(self):
        sf = information_function(HALVES)
        assert [v for _, v in sf.pieces] == [1.0, 1.0]

    def test_trivial(self):
        sf = information_function(Algebra.trivial())
        assert [v for _, v in sf.pieces] == [0.0]

    def test_quarter(self):
        sf = information_function(QUARTER_REST)
        values = [v for _, v in sf.pieces]
        assert values[0] == 2.0
        assert values[1] == pytest.approx(math.log2(4 / 3), abs=1e-15)

    def test_expectation_is_shannon(self):
        a = Algebra.equipartition(4).join(QUARTER_REST)
        sf = information_function(a)
        assert sf.integrate(SignedMeasure.lebesgue()) == pytest.approx(
            Shannon().evaluate(a), abs=1e-12
        )


class TestEvaluation:
    def test_shannon_normalization(self):
        assert eval_entropy(Shannon(), HALVES) == 1.0

    def test_hartley_four_atoms(self):
        assert Hartley().evaluate(Algebra.equipartition(4)) == 2.0

    def test_variance_zero_on_equipartition(self):
        assert Variance().evaluate(Algebra.equipartition(8)) == 0.0

    def test_info_integral(self):
        m = SignedMeasure.step_on_cells([2, 0])
        # m gives mass 1 to the first half, 0 to the second; both log terms = 1
        assert InfoIntegral(m).evaluate(HALVES) == 1.0

    def test_renyi_2(self):
        a = Algebra(
            (
                MSet.interval(0, "1/2"),
                MSet.interval("1/2", "3/4"),
                MSet.interval("3/4", 1),
            )
        )
        # sum of squares = 1/4 + 1/16 + 1/16 = 3/8
        assert Renyi(F(2)).evaluate(a) == pytest.approx(-math.log2(3 / 8), abs=1e-12)

    def test_renyi_rejects_order_one(self):
        with pytest.raises(AlphaOneError):
            Renyi(F(1))

    def test_min_max(self):
        assert MinInfo().evaluate(QUARTER_REST) == pytest.approx(
            math.log2(4 / 3), abs=1e-15
        )
        assert MaxInfo().evaluate(QUARTER_REST) == 2.0

    def test_combo_weighted_sum(self):
        spec = Combo(((F(2), Shannon()), (F(-1, 2), Hartley())))
        assert spec.evaluate(HALVES) == pytest.approx(2.0 - 0.5, abs=1e-12)


class TestCgf:
    def test_zero_at_origin(self):
        rng = rng_from_seed(11)
        for _ in range(10):
            assert abs(cgf(random_algebra(rng), 0.0)) <= 1e-12

    def test_hartley_at_one(self):
        assert cgf(Algebra.equipartition(4), 1.0) == 2.0

    def test_second_moment_point(self):
        assert cgf(HALVES, -1.0) == -1.0


class TestAdditivity:
    def test_shannon_residual(self):
        rng = rng_from_seed(5)
        for _ in range(20):
            a, b = random_independent_pair(rng)
            assert additivity_residual(Shannon(), a, b) <= 1e-9

    def test_trivial_partner(self):
        for spec in (Shannon(), Renyi(F(2)), Hartley(), Variance(), MinInfo()):
            assert additivity_residual(spec, HALVES, Algebra.trivial()) <= 1e-12

    def test_info_integral_residual(self):
        m = SignedMeasure.step_on_cells([2, 0])
        rng = rng_from_seed(9)
        for _ in range(20):
            a, b = random_independent_pair(rng)
            assert additivity_residual(InfoIntegral(m), a, b) <= 1e-9

    def test_rejects_dependent_pair(self):
        with pytest.raises(NotIndependentError):
            additivity_residual(Shannon(), HALVES, HALVES)


class TestSpecProperties:
    def test_renyi_tends_to_shannon(self):
        rng = rng_from_seed(13)
        for _ in range(10):
            a = random_algebra(rng)
            s = Shannon().evaluate(a)
            for alpha in (1 + F(1, 10**6), 1 - F(1, 10**6)):
                assert abs(Renyi(alpha).evaluate(a) - s) <= 1e-4

    def test_hartley_is_renyi_zero(self):
        rng = rng_from_seed(17)
        renyi0 = Renyi(F(0))
        for _ in range(20):
            a = random_algebra(rng)
            assert renyi0.evaluate(a) == Hartley().evaluate(a)

    def test_min_shannon_max_sandwich(self):
        rng = rng_from_seed(19)
        for _ in range(20):
            a = random_algebra(rng)
            s = Shannon().evaluate(a)
            assert MinInfo().evaluate(a) <= s + 1e-12
            assert s <= MaxInfo().evaluate(a) + 1e-12

    def test_atom_measure_invariance(self):
        # every built-in except the information integral is unchanged under
        # re-placing the same measure profile
        rng = rng_from_seed(23)
        from partent.sampling import random_profile

        specs = [Shannon(), Renyi(F(2)), Renyi(F(1, 2)), Hartley(), Variance(),
                 MinInfo(), MaxInfo()]
        for _ in range(15):
            profile = random_profile(rng)
            a = independent_with_profile(random_algebra(rng), profile)
            b = independent_with_profile(random_algebra(rng), profile)
            for spec in specs:
                assert abs(spec.evaluate(a) - spec.evaluate(b)) <= 1e-12

    def test_info_integral_separates_measures(self):
        # two measures that differ on a set of measure 1/3 give different
        # values on the two-atom algebra over that set
        third = MSet.interval(0, "1/3")
        a = Algebra((third, third.complement()))
        m1 = SignedMeasure.lebesgue()
        m2 = SignedMeasure.from_values([0, "1/3", 1], [3, 0])
        assert m1(third) != m2(third)
        gap = abs(InfoIntegral(m1).evaluate(a) - InfoIntegral(m2).evaluate(a))
        assert gap > 1e-6


class TestJson:
    @pytest.mark.parametrize(
        "spec",
        [
            Shannon(),
            Renyi(F(2)),
            Renyi(F(1, 2)),
            Hartley(),
            MinInfo(),
            MaxInfo(),
            Variance(),
            InfoIntegral(SignedMeasure.step_on_cells([2, 0])),
            shannon_plus_info(SignedMeasure.step_on_cells([2, 0, 1, 1])),
        ],
    )
    def test_round_trip(self, spec):
        assert EntropySpec.from_json(spec.to_json()) == spec

    def test_kind_strings(self):
        assert Shannon().to_json() == {"kind": "shannon"}
        assert Renyi(F(2)).to_json() == {"kind": "renyi", "alpha": "2/1"}
        assert MinInfo().to_json() == {"kind": "min"}

    def test_rejects_unknown_kind(self):
        with pytest.raises(SpecFormatError):
            EntropySpec.from_json({"kind": "tsallis"})
        with pytest.raises(SpecFormatError):
            EntropySpec.from_json({"alpha": "2/1"})
        with pytest.raises(SpecFormatError):
            EntropySpec.from_json({"kind": "renyi"})
