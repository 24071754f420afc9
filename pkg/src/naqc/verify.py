"""Oracle-vs-simulation verification harness."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import oracle
from .coherence import CoherenceMeasure, batch_complementarity_sums, refine_relent_bound
from .quantum import random_bloch_vectors, singlet
from .scenario import ScenarioConfig, search_max_alices, sequential_naqc

ORACLE_TOL = 1e-9
GRID_POINTS = 100
EXPECTED_MAX_ALICES = {
    CoherenceMeasure.L1: 2,
    CoherenceMeasure.RELATIVE_ENTROPY: 1,
    CoherenceMeasure.SKEW_INFORMATION: 1,
}


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    max_deviation: float | None = None


def unit_grid(n: int = GRID_POINTS, lo: float = 0.01, hi: float = 1.0) -> np.ndarray:
    return np.linspace(lo, hi, n)


def oracle_grid(measure: CoherenceMeasure, n_alices: int, points: int = GRID_POINTS):
    """Sharpness chains for the oracle comparison.

    Each free parameter is swept over ``points`` values while the others sit
    at a few fixed levels. Predecessors stay strictly below 1; the target
    sweep ends at exactly 1.
    """
    pred = unit_grid(points, 0.01, 0.995)
    target = unit_grid(points, 0.01, 1.0)
    fixed_pred = (0.2, 0.55, 0.9)
    fixed_target = (0.4, 0.8, 1.0)
    if n_alices == 1:
        return [(t,) for t in target]
    if n_alices == 2:
        chains = [(p, t) for p in pred for t in fixed_target]
        chains += [(p, t) for p in fixed_pred for t in target]
        return chains
    chains = [(p, q, t) for p in pred for q in fixed_pred for t in (1.0,)]
    chains += [(p, q, t) for p in fixed_pred for q in pred for t in (1.0,)]
    chains += [(p, q, t) for p in fixed_pred for q in fixed_pred for t in target]
    return chains


ORACLE_CASES = (
    (CoherenceMeasure.L1, 1),
    (CoherenceMeasure.L1, 2),
    (CoherenceMeasure.L1, 3),
    (CoherenceMeasure.RELATIVE_ENTROPY, 1),
    (CoherenceMeasure.RELATIVE_ENTROPY, 2),
    (CoherenceMeasure.SKEW_INFORMATION, 1),
    (CoherenceMeasure.SKEW_INFORMATION, 2),
)


def oracle_deviation(measure: CoherenceMeasure, n_alices: int, points: int = GRID_POINTS) -> float:
    state = singlet()
    worst = 0.0
    for chain in oracle_grid(measure, n_alices, points):
        sim = sequential_naqc(state, ScenarioConfig.of(chain, measure)).value
        worst = max(worst, abs(sim - oracle.closed_form(measure, chain)))
    return worst


def check_oracles(points: int = GRID_POINTS) -> list[Check]:
    checks = []
    for measure, n in ORACLE_CASES:
        dev = oracle_deviation(measure, n, points)
        checks.append(Check(f"oracle {measure.value} Alice^{n}", dev <= ORACLE_TOL, f"max |sim - closed form| = {dev:.3e}", dev))
    return checks


def check_complementarity(samples: int = 100_000, seed: int = 0) -> list[Check]:
    rng = np.random.default_rng(seed)
    bloch = random_bloch_vectors(rng, samples)
    checks = []
    for measure in CoherenceMeasure:
        sums = batch_complementarity_sums(bloch, measure)
        worst = float(sums.max())
        ok = worst <= measure.bound + 1e-9
        checks.append(Check(f"complementarity {measure.value}", ok,
                            f"{samples} states, max sum {worst:.12g} vs bound {measure.bound:.12g}"))
    return checks


def check_max_alices(step: float = 0.01) -> list[Check]:
    checks = []
    for measure, expected in EXPECTED_MAX_ALICES.items():
        found = search_max_alices(measure, step)
        witness = ",".join(f"{x:.9f}" for x in found.witness) if found.witness else "-"
        checks.append(Check(f"max-alices {measure.value}", found.count == expected,
                            f"found {found.count} (expected {expected}), witness [{witness}]"))
    return checks


def check_thresholds() -> list[Check]:
    l1 = oracle.simulated_threshold(CoherenceMeasure.L1).threshold
    skew = oracle.simulated_threshold(CoherenceMeasure.SKEW_INFORMATION).threshold
    relent = oracle.simulated_threshold(CoherenceMeasure.RELATIVE_ENTROPY).threshold
    upper = oracle.alice2_upper_l1()
    return [
        Check("threshold l1 Alice^1", abs(l1 - oracle.EXACT_FORMS["(sqrt(3)-1)/sqrt(2)"]) <= 1e-6, f"{l1:.9f}"),
        Check("threshold skew Alice^1", abs(skew - oracle.EXACT_FORMS["1/sqrt(2)"]) <= 1e-6, f"{skew:.9f}"),
        Check("threshold relent Alice^1", abs(relent - 0.65) <= 0.005, f"{relent:.9f}"),
        Check("l1 Alice^2 window upper", abs(upper - oracle.EXACT_FORMS["sqrt(2*sqrt(6)-3)/2"]) <= 1e-6, f"{upper:.9f}"),
    ]


def sensitivity_report() -> list[str]:
    lines = [f"relent bound {b:.3f} -> Alice^1 threshold {t:.9f}" for b, t in oracle.relent_threshold_sensitivity()]
    lines.append(f"numerical sup of relent complementarity sum: {refine_relent_bound():.9f}")
    return lines


def run_all() -> list[Check]:
    return check_oracles() + check_thresholds() + check_complementarity() + check_max_alices()


def format_check(check: Check) -> str:
    status = "PASS" if check.passed else "FAIL"
    return f"{status}  {check.name}: {check.detail}"

