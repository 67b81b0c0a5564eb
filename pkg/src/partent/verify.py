"""Named verification suites over randomized inputs.

Each suite runs a family of properties for a number of seeded trials and
reports, per property, the largest observed deviation against its pinned
tolerance.  Exact rational identities carry tolerance 0 and report the
number of failing trials as their deviation.

Suites are exposed through the CLI (`verify --suite NAME`) and reused by
the acceptance tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebras import (
    Algebra,
    conditional_independent,
    coarsen,
    distance_D,
    distance_d,
    independent_with_profile,
    same_atom_measures,
)
from .decomposition import decompose, extract_measure
from .entropies import (
    EntropySpec,
    Hartley,
    InfoIntegral,
    MaxInfo,
    MinInfo,
    Renyi,
    Shannon,
    Variance,
    shannon_plus_info,
)
from .errors import InputFormatError
from .measure_space import MSet, ONE, SignedMeasure, ZERO
from .sampling import (
    random_algebra,
    random_enclosing_algebra,
    random_grouping,
    random_independent_pair,
    random_mset,
    random_profile,
    random_proper_mset,
    random_rat,
    random_swap_pair,
    random_swap_triple,
    rng_from_seed,
)
from .transport import (
    SwapPair,
    block_pair_algebra,
    family_ratio,
    independent_block_pair_algebra,
    smaller_block_measure,
    transport,
    transport_increment,
    transport_rate,
)

# density (2, 0, 1, 1) on quarters: total mass 1, visibly non-proportional to
# Lebesgue, and constant on every dyadic grid of size >= 4
STEP_QUARTERS = SignedMeasure.step_on_cells([2, 0, 1, 1])

# density 2 on [0, 1/2), 0 on the rest
STEP_HALF = SignedMeasure.step_on_cells([2, 0])

ADDITIVITY_SPECS: tuple[tuple[str, EntropySpec], ...] = (
    ("shannon", Shannon()),
    ("renyi-0", Renyi(Fraction(0))),
    ("renyi-1/2", Renyi(Fraction(1, 2))),
    ("renyi-2", Renyi(Fraction(2))),
    ("hartley", Hartley()),
    ("min", MinInfo()),
    ("max", MaxInfo()),
    ("variance", Variance()),
    ("lm", InfoIntegral(STEP_HALF)),
)

ZERO_GRID_SPECS: tuple[tuple[str, EntropySpec], ...] = (
    ("renyi-2", Renyi(Fraction(2))),
    ("variance", Variance()),
    ("hartley", Hartley()),
    ("min", MinInfo()),
)


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.tolerance

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "max_deviation": self.deviation,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class SuiteResult:
    suite: str
    trials: int
    seed: int
    checks: tuple[PropertyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failing(self) -> tuple[PropertyCheck, ...]:
        return tuple(c for c in self.checks if not c.passed)

    def check(self, name: str) -> PropertyCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "trials": self.trials,
            "seed": self.seed,
            "passed": self.passed,
            "properties": [c.to_json() for c in self.checks],
        }


class _Tracker:
    """Accumulates per-property deviations and pins their tolerances."""

    def __init__(self):
        self._dev: dict[str, float] = {}
        self._tol: dict[str, float] = {}

    def observe(self, name: str, deviation: float, tolerance: float) -> None:
        self._dev[name] = max(self._dev.get(name, 0.0), abs(deviation))
        self._tol[name] = tolerance

    def exact(self, name: str, holds: bool) -> None:
        # deviation counts failing trials; tolerance is zero
        self._dev[name] = self._dev.get(name, 0.0) + (0.0 if holds else 1.0)
        self._tol[name] = 0.0

    def result(self, suite: str, trials: int, seed: int) -> SuiteResult:
        checks = tuple(
            PropertyCheck(name, self._dev[name], self._tol[name])
            for name in self._dev
        )
        return SuiteResult(suite, trials, seed, checks)


def _random_step_measure(rng) -> SignedMeasure:
    values = [Fraction(rng.randint(-8, 8), rng.randint(1, 4)) for _ in range(4)]
    return SignedMeasure.step_on_cells(values)


def suite_set_laws(trials: int, seed: int) -> SuiteResult:
    """Exact Boolean-algebra and measure identities on random sets."""
    rng = rng_from_seed(seed)
    t = _Tracker()
    for _ in range(trials):
        a, b, c = (random_mset(rng) for _ in range(3))
        t.exact("union-commutative", a.union(b) == b.union(a))
        t.exact("intersect-commutative", a.intersect(b) == b.intersect(a))
        t.exact(
            "union-associative", a.union(b).union(c) == a.union(b.union(c))
        )
        t.exact(
            "intersect-associative",
            a.intersect(b).intersect(c) == a.intersect(b.intersect(c)),
        )
        t.exact(
            "intersect-distributes",
            a.intersect(b.union(c)) == a.intersect(b).union(a.intersect(c)),
        )
        t.exact(
            "de-morgan",
            a.union(b).complement() == a.complement().intersect(b.complement()),
        )
        t.exact("double-complement", a.complement().complement() == a)
        t.exact("symdiff-self-empty", a.symdiff(a).is_empty())
        t.exact(
            "inclusion-exclusion",
            a.union(b).measure + a.intersect(b).measure == a.measure + b.measure,
        )
        raw = list(a.intervals + b.intervals)
        rng.shuffle(raw)
        t.exact("normalize-order-insensitive", MSet.from_pairs(raw) == a.union(b))
        s = random_proper_mset(rng)
        theta = s.measure * random_rat(rng, 16)
        p = s.prefix(theta)
        t.exact("prefix-subset", s.contains(p))
        t.exact("prefix-measure", p.measure == theta)
        t.exact("prefix-full", s.prefix(s.measure) == s)
        m = _random_step_measure(rng)
        t.exact("measure-additive", m(a.union(b)) + m(a.intersect(b)) == m(a) + m(b))
        disjoint_b = b.intersect(a.complement())
        t.exact(
            "measure-disjoint-additive",
            m(a.union(disjoint_b)) == m(a) + m(disjoint_b),
        )
    return t.result("set-laws", trials, seed)


def suite_algebra_laws(trials: int, seed: int) -> SuiteResult:
    """Exact join laws, profile construction, restriction and separation."""
    rng = rng_from_seed(seed)
    t = _Tracker()
    trivial = Algebra.trivial()
    for k in range(trials):
        a = random_algebra(rng, max_atoms=4, max_den=16)
        b = random_algebra(rng, max_atoms=4, max_den=16)
        c = random_algebra(rng, max_atoms=3, max_den=8)
        t.exact("join-commutative", a.join(b) == b.join(a))
        t.exact("join-associative", a.join(b).join(c) == a.join(b.join(c)))
        t.exact("join-idempotent", a.join(a) == a)
        t.exact("join-identity", a.join(trivial) == a)
        profile = random_profile(rng, max_atoms=6)
        built = independent_with_profile(a, profile)
        t.exact("profile-measures", built.probabilities == profile.weights)
        t.exact("profile-independent", a.is_independent(built))
        carrier = random_proper_mset(rng)
        traces = a.restrict(carrier)
        union = MSet.empty()
        for tr in traces:
            union = union.union(tr)
        t.exact("restrict-partitions", union == carrier)
        t.exact(
            "restrict-measures",
            sum((tr.measure for tr in traces), ZERO) == carrier.measure,
        )
        # separation: for a coarsening k of a, independence of (a, b) is
        # equivalent to independence of (b, k) plus conditional independence
        groups = random_grouping(rng, a.atom_count)
        coarse = coarsen(a, groups)
        partner = (
            independent_with_profile(a, random_profile(rng, max_atoms=4))
            if k % 2 == 0
            else b
        )
        lhs = a.is_independent(partner)
        rhs = partner.is_independent(coarse) and conditional_independent(
            a, partner, coarse
        )
        t.exact("separation-equivalence", lhs == rhs)
        t.exact("trivial-conditioning", conditional_independent(a, partner, trivial) == lhs)
    return t.result("algebra-laws", trials, seed)


def suite_additivity(trials: int, seed: int) -> SuiteResult:
    """Additivity of every built-in spec on random independent pairs."""
    rng = rng_from_seed(seed)
    t = _Tracker()
    for _ in range(trials):
        a, b = random_independent_pair(rng)
        joined = a.join(b)
        for name, spec in ADDITIVITY_SPECS:
            gap = spec.evaluate(joined) - spec.evaluate(a) - spec.evaluate(b)
            t.observe(f"additivity-{name}", gap, 1e-9)
    return t.result("additivity", trials, seed)


_RATIOS = (Fraction(1, 2), Fraction(2), Fraction(3))


def _exact_transport_trial(rng, t: _Tracker) -> None:
    """One trial of the exact (tolerance-zero) transport identities."""
    pair = random_swap_pair(rng)
    v, w = pair.v, pair.w
    lam = _RATIOS[rng.randint(0, 2)]
    enclosing = random_enclosing_algebra(rng, pair, lam)
    swapped = transport(enclosing, pair)
    t.exact("transport-involution", transport(swapped, pair) == enclosing)
    t.exact(
        "transport-preserves-measures",
        sorted(swapped.probabilities) == sorted(enclosing.probabilities),
    )
    t.exact(
        "transport-reverse-ratio",
        family_ratio(swapped, pair.reversed()) == family_ratio(enclosing, pair),
    )
    pieces = rng.randint(2, 3)
    stepwise = enclosing
    for vp, wp in zip(v.split_into(pieces), w.split_into(pieces)):
        stepwise = transport(stepwise, SwapPair(vp, wp))
    t.exact("transport-split-composition", stepwise == swapped)

    # the product law needs a pair small enough for an independent enclosure
    kappa = _RATIOS[rng.randint(0, 2)]
    cap = smaller_block_measure(kappa) * smaller_block_measure(lam)
    theta_c = min(cap, v.measure) * random_rat(rng, 8)
    small = SwapPair(v.prefix(theta_c), w.prefix(theta_c))
    base = block_pair_algebra(small, lam)
    partner = independent_block_pair_algebra(base, small, kappa)
    t.exact(
        "independent-enclosure",
        base.is_independent(partner) and family_ratio(partner, small) == kappa,
    )
    t.exact(
        "transport-product",
        transport(base.join(partner), small)
        == transport(base, small).join(transport(partner, small)),
    )


def run_exact_transport(trials: int, seed: int) -> SuiteResult:
    """Only the exact transport identities, for the exact-layer gate."""
    rng = rng_from_seed(seed)
    t = _Tracker()
    for _ in range(trials):
        _exact_transport_trial(rng, t)
    return t.result("exact-transport", trials, seed)


def suite_delta_laws(trials: int, seed: int) -> SuiteResult:
    """Laws of the transport increment, plus exact transport identities."""
    rng = rng_from_seed(seed)
    t = _Tracker()
    spec = shannon_plus_info(STEP_QUARTERS)
    two = Fraction(2)
    for _ in range(trials):
        u, v, w = random_swap_triple(rng)
        pair = SwapPair(v, w)
        inc_uw = transport_increment(spec, SwapPair(u, w), two).value
        inc_uv = transport_increment(spec, SwapPair(u, v), two).value
        inc_vw = transport_increment(spec, pair, two).value
        t.observe("cocycle", inc_uw - inc_uv - inc_vw, 1e-8)
        inc_wv = transport_increment(spec, SwapPair(w, v), two).value
        t.observe("antisymmetry", inc_vw + inc_wv, 1e-9)
        share = random_rat(rng, 8)
        theta = v.measure * share
        v1, w1 = v.prefix(theta), w.prefix(theta)
        v2, w2 = v.difference(v1), w.difference(w1)
        split_sum = (
            transport_increment(spec, SwapPair(v1, w1), two).value
            + transport_increment(spec, SwapPair(v2, w2), two).value
        )
        t.observe("split-additivity", inc_vw - split_sum, 1e-8)
        at = {r: transport_increment(spec, pair, r).value for r in _RATIOS}
        for i, kappa in enumerate(_RATIOS):
            for lam in _RATIOS[i:]:
                combined = transport_increment(spec, pair, kappa * lam).value
                t.observe("log-law", combined - at[kappa] - at[lam], 1e-8)
        rate = transport_rate(spec, pair)
        t.observe("proportionality-4-vs-2", rate.crosscheck_residual, 1e-8)
        _exact_transport_trial(rng, t)
    return t.result("delta-laws", trials, seed)


def suite_delta_welldef(trials: int, seed: int) -> SuiteResult:
    """The increment does not depend on the enclosing algebra."""
    rng = rng_from_seed(seed)
    t = _Tracker()
    spec = shannon_plus_info(STEP_QUARTERS)
    for _ in range(trials):
        pair = random_swap_pair(rng)
        lam = _RATIOS[rng.randint(0, 2)]
        two_block = block_pair_algebra(pair, lam)
        multi = random_enclosing_algebra(rng, pair, lam)
        d1 = spec.evaluate(transport(two_block, pair)) - spec.evaluate(two_block)
        d2 = spec.evaluate(transport(multi, pair)) - spec.evaluate(multi)
        t.observe("increment-well-defined", d1 - d2, 1e-9)
    return t.result("delta-welldef", trials, seed)


def suite_extraction(trials: int, seed: int) -> SuiteResult:
    """Measure extraction against the exact integration oracle.

    Deterministic: the trials/seed arguments are accepted for interface
    uniformity but the checks below involve no randomness.
    """
    t = _Tracker()
    spec = shannon_plus_info(STEP_QUARTERS)
    grid16 = extract_measure(spec, 16)
    total_mass = STEP_QUARTERS(MSet.whole())
    for j in range(16):
        expected = float(STEP_QUARTERS(grid16.cell(j)) - total_mass / 16)
        t.observe("oracle-map", grid16.cell_values[j] - expected, 1e-8)
    t.observe("grid-total-zero", grid16.total, 1e-8)
    for name, zspec in ZERO_GRID_SPECS:
        grid = extract_measure(zspec, 8)
        t.observe(
            f"zero-grid-{name}", max(abs(x) for x in grid.cell_values), 1e-8
        )
    pure = extract_measure(InfoIntegral(STEP_QUARTERS), 8)
    combo = extract_measure(spec, 8)
    for x, y in zip(combo.cell_values, pure.cell_values):
        t.observe("combo-matches-pure", x - y, 1e-8)
    coarse = extract_measure(spec, 32).coarsened()
    for x, y in zip(coarse.cell_values, grid16.cell_values):
        t.observe("refinement-consistent", x - y, 1e-8)
    return t.result("extraction", trials, seed)


def suite_decomposition(trials: int, seed: int) -> SuiteResult:
    """Full decomposition runs with analytically known answers."""
    t = _Tracker()
    spec = shannon_plus_info(STEP_QUARTERS)
    report = decompose(spec, 16, trials, seed)
    t.observe("atom-dependence", report.atom_dependence_deviation, 1e-8)
    t.observe("residual-additivity", report.additivity_deviation, 1e-8)
    # recovered measure is the original minus its total mass times Lebesgue,
    # so the residual on the even two-cell split is twice Shannon = 2
    two_cell = Algebra.equipartition(2)
    t.observe("residual-two-cell", report.residual(two_cell) - 2.0, 1e-8)
    side_trials = min(trials, 25)
    shannon_report = decompose(Shannon(), 8, side_trials, seed)
    t.observe(
        "shannon-zero-grid",
        max(abs(x) for x in shannon_report.grid.cell_values),
        1e-9,
    )
    t.observe(
        "shannon-deviations",
        max(
            shannon_report.atom_dependence_deviation,
            shannon_report.additivity_deviation,
        ),
        1e-9,
    )
    renyi_report = decompose(Renyi(Fraction(2)), 8, side_trials, seed)
    t.observe(
        "renyi2-zero-grid",
        max(abs(x) for x in renyi_report.grid.cell_values),
        1e-8,
    )
    t.observe(
        "renyi2-deviations",
        max(
            renyi_report.atom_dependence_deviation,
            renyi_report.additivity_deviation,
        ),
        1e-8,
    )
    return t.result("decomposition", trials, seed)


def _bruteforce_distance(a: Algebra, b: Algebra) -> Fraction:
    """Exhaustive maximum over all partial atom matchings (oracle)."""
    weights = [[r.intersect(c).measure for c in b.atoms] for r in a.atoms]
    denom = math.lcm(*(w.denominator for row in weights for w in row))
    scaled = [[int(w * denom) for w in row] for row in weights]
    cols = len(b.atoms)
    best = 0

    def explore(i: int, used: int, acc: int) -> None:
        nonlocal best
        if i == len(scaled):
            best = max(best, acc)
            return
        explore(i + 1, used, acc)
        row = scaled[i]
        for j in range(cols):
            bit = 1 << j
            if not used & bit:
                explore(i + 1, used | bit, acc + row[j])

    explore(0, 0, 0)
    return ONE - Fraction(best, denom)


def suite_metrics(trials: int, seed: int) -> SuiteResult:
    """Agreement pseudometrics: DP vs exhaustive oracle, plus the axioms."""
    rng = rng_from_seed(seed)
    t = _Tracker()
    for _ in range(trials):
        a = random_algebra(rng, max_atoms=6, max_den=32)
        b = random_algebra(rng, max_atoms=6, max_den=32)
        c = random_algebra(rng, max_atoms=6, max_den=32)
        dab = distance_d(a, b)
        t.exact("dp-matches-bruteforce", dab == _bruteforce_distance(a, b))
        t.exact("identity", distance_d(a, a) == ZERO)
        t.exact("symmetry", dab == distance_d(b, a))
        t.exact("nonnegative", dab >= ZERO)
        t.exact("triangle", distance_d(a, c) <= dab + distance_d(b, c))
        t.exact(
            "zero-implies-same-measures",
            dab != ZERO or same_atom_measures(a, b),
        )
        t.exact(
            "counted-metric-consistent",
            distance_D(a, b) == dab + abs(a.atom_count - b.atom_count),
        )
        t.exact("counted-metric-identity", distance_D(a, a) == ZERO)
    return t.result("metrics", trials, seed)


SUITES = {
    "set-laws": suite_set_laws,
    "algebra-laws": suite_algebra_laws,
    "additivity": suite_additivity,
    "delta-laws": suite_delta_laws,
    "delta-welldef": suite_delta_welldef,
    "extraction": suite_extraction,
    "decomposition": suite_decomposition,
    "metrics": suite_metrics,
}


def run_suite(name: str, trials: int, seed: int) -> SuiteResult:
    try:
        fn = SUITES[name]
    except KeyError:
        raise InputFormatError(
            f"unknown suite {name!r}; choose from {sorted(SUITES)}"
        ) from None
    return fn(trials, seed)
