"""Acceptance gate: one test per criterion, at pinned tolerances.

Each test prints a single [PASS]/[FAIL] line (visible with `pytest -s`)
carrying the observed deviation, the tolerance, and the runtime against the
criterion's budget.
"""

import time
from fractions import Fraction

from partent.algebras import Algebra
from partent.decomposition import decompose, extract_measure
from partent.entropies import Shannon, shannon_plus_info
from partent.measure_space import MSet
from partent.sampling import random_swap_pair, rng_from_seed
from partent.transport import transport_rate
from partent.verify import (
    STEP_QUARTERS,
    run_exact_transport,
    suite_additivity,
    suite_algebra_laws,
    suite_delta_laws,
    suite_delta_welldef,
    suite_metrics,
    suite_set_laws,
)

F = Fraction

SPEC = shannon_plus_info(STEP_QUARTERS)


class _Gate:
    def __init__(self, number, name, budget_s):
        self.label = f"criterion {number:02d} {name}"
        self.budget = budget_s
        self.started = time.perf_counter()

    def finish(self, deviation, tolerance):
        elapsed = time.perf_counter() - self.started
        ok = deviation <= tolerance and elapsed < self.budget
        print(
            f"[{'PASS' if ok else 'FAIL'}] {self.label}: "
            f"max_deviation={deviation:.3e} tolerance={tolerance:g} "
            f"({elapsed:.2f}s < {self.budget:g}s)"
        )
        assert deviation <= tolerance, f"{self.label}: {deviation} > {tolerance}"
        assert elapsed < self.budget, f"{self.label}: {elapsed:.2f}s over budget"


def _suite_deviation(result, names=None):
    checks = [
        c for c in result.checks if names is None or c.name in names
    ]
    assert checks, "no matching properties"
    failed = [c for c in checks if not c.passed]
    assert not failed, f"failing properties: {[(c.name, c.deviation) for c in failed]}"
    return max(c.deviation for c in checks)


def test_criterion_01_shannon_normalization():
    gate = _Gate(1, "shannon-normalization", 0.1)
    value = Shannon().evaluate(Algebra.equipartition(2))
    gate.finish(abs(value - 1.0), 1e-12)


def test_criterion_02_additivity_suite():
    gate = _Gate(2, "additivity", 5.0)
    result = suite_additivity(trials=200, seed=1)
    gate.finish(_suite_deviation(result), 1e-9)


def test_criterion_03_increment_well_defined():
    gate = _Gate(3, "increment-well-defined", 2.0)
    result = suite_delta_welldef(trials=50, seed=2)
    gate.finish(_suite_deviation(result), 1e-9)


def test_criterion_04_increment_laws():
    gate = _Gate(4, "increment-laws", 5.0)
    result = suite_delta_laws(trials=50, seed=3)
    dev = _suite_deviation(
        result, {"cocycle", "split-additivity", "log-law", "antisymmetry"}
    )
    gate.finish(dev, 1e-8)


def test_criterion_05_proportionality():
    gate = _Gate(5, "proportionality-4-vs-2", 2.0)
    rng = rng_from_seed(4)
    worst = 0.0
    for _ in range(50):
        pair = random_swap_pair(rng)
        worst = max(worst, transport_rate(SPEC, pair).crosscheck_residual)
    gate.finish(worst, 1e-8)


def test_criterion_06_extraction_oracle():
    gate = _Gate(6, "extraction-oracle", 10.0)
    n = 16
    grid = extract_measure(SPEC, n)
    total = STEP_QUARTERS(MSet.whole())
    worst = 0.0
    for j in range(n):
        expected = float(STEP_QUARTERS(grid.cell(j)) - total / n)
        worst = max(worst, abs(grid.cell_values[j] - expected))
    gate.finish(worst, 1e-8)


def test_criterion_07_atom_measure_specs_extract_to_zero():
    gate = _Gate(7, "zero-extraction", 10.0)
    from partent.entropies import Hartley, MinInfo, Renyi, Variance

    worst = 0.0
    for spec in (Renyi(F(2)), Variance(), Hartley(), MinInfo()):
        grid = extract_measure(spec, 8)
        worst = max(worst, max(abs(x) for x in grid.cell_values))
    gate.finish(worst, 1e-8)


def test_criterion_08_decomposition():
    gate = _Gate(8, "decomposition", 15.0)
    report = decompose(SPEC, 16, trials=100, seed=5)
    residual_gap = abs(report.residual(Algebra.equipartition(2)) - 2.0)
    worst = max(
        report.atom_dependence_deviation,
        report.additivity_deviation,
        residual_gap,
    )
    gate.finish(worst, 1e-8)


def test_criterion_09_grid_refinement():
    gate = _Gate(9, "grid-refinement", 30.0)
    fine = extract_measure(SPEC, 32).coarsened()
    coarse = extract_measure(SPEC, 16)
    worst = max(
        abs(x - y) for x, y in zip(fine.cell_values, coarse.cell_values)
    )
    gate.finish(worst, 1e-8)


def test_criterion_10_metric_oracle_and_axioms():
    gate = _Gate(10, "metric-d", 2.0)
    result = suite_metrics(trials=100, seed=6)
    gate.finish(_suite_deviation(result), 0.0)


def test_criterion_11_exact_layer():
    gate = _Gate(11, "exact-layer", 5.0)
    deviations = [
        _suite_deviation(suite_set_laws(trials=200, seed=7)),
        _suite_deviation(suite_algebra_laws(trials=200, seed=8)),
        _suite_deviation(run_exact_transport(trials=200, seed=9)),
    ]
    gate.finish(max(deviations), 0.0)
