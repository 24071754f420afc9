"""Closed-form NAQC values for the singlet, threshold solving and constrained maxima.

The closed forms here are written independently of the density-matrix
engine in :mod:`naqc.scenario` and serve as its cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

from .coherence import CoherenceMeasure
from .quantum import singlet
from .scenario import ScenarioConfig, sequential_naqc

LOG2E = 1.0 / math.log(2.0)
SQRT6 = math.sqrt(6.0)

EXACT_FORMS = {
    "(sqrt(3)-1)/sqrt(2)": (math.sqrt(3.0) - 1.0) / math.sqrt(2.0),
    "1/sqrt(2)": 1.0 / math.sqrt(2.0),
    "sqrt(2*sqrt(6)-3)/2": 0.5 * math.sqrt(2.0 * SQRT6 - 3.0),
}


class NoCrossingError(ValueError):
    """The function does not cross the bound inside the interval."""


def _check_unit(*lams: float, closed: bool = True) -> None:
    for lam in lams:
        if not (0.0 < lam < 1.0 or (closed and lam == 1.0)):
            raise ValueError(f"sharpness {lam!r} outside (0, 1]")


def _quality(lam: float) -> float:
    return math.sqrt(max(1.0 - lam * lam, 0.0))


def n1_l1(l1: float) -> float:
    _check_unit(l1)
    return 6.0 * l1 / (1.0 + l1 * l1)


def n2_l1(l1: float, l2: float) -> float:
    _check_unit(l1, l2)
    return 2.0 * l2 * (1.0 + 2.0 * _quality(l1)) / (1.0 + l2 * l2)


def n3_l1(l1: float, l2: float, l3: float) -> float:
    _check_unit(l1, l2, l3)
    f1, f2 = _quality(l1), _quality(l2)
    return 2.0 * l3 * (1.0 + 2.0 * f1 + 2.0 * f2 + 4.0 * f1 * f2) / (3.0 * (1.0 + l3 * l3))


def _entropic_pair(lam: float) -> float:
    """``log2(e) * [2 lam/(1+lam^2) atanh(lam) - atanh(lam^2)]``, equal to 1/2 at lam = 1.

    Expanded into logarithms so the two divergent atanh terms cancel
    analytically: ``[(1+g) ln(1+lam) + (1-g) ln(1-lam) - ln(1+lam^2)] / 2``
    with ``g = 2 lam/(1+lam^2)``.
    """
    if lam == 1.0:
        return 0.5
    g = 2.0 * lam / (1.0 + lam * lam)
    one_minus_g = (1.0 - lam) ** 2 / (1.0 + lam * lam)
    return 0.5 * LOG2E * ((1.0 + g) * math.log1p(lam) + one_minus_g * math.log1p(-lam) - math.log1p(lam * lam))


def n1_e(l1: float) -> float:
    _check_unit(l1)
    return 6.0 * _entropic_pair(l1)


def _xlog2x(x: float) -> float:
    return x * math.log2(x) if x > 0.0 else 0.0


def n2_e(l1: float, l2: float) -> float:
    _check_unit(l1, l2)
    x = _quality(l1) * l2 / (1.0 + l2 * l2)
    return 2.0 * (1.0 + _entropic_pair(l2) + _xlog2x(0.5 - x) + _xlog2x(0.5 + x))


def n1_s(l1: float) -> float:
    _check_unit(l1)
    return 6.0 * l1 * l1 / (1.0 + l1 * l1)


def n2_s(l1: float, l2: float) -> float:
    _check_unit(l1, l2)
    l2sq = l2 * l2
    root = math.sqrt((1.0 - l2sq) ** 2 + 4.0 * l1 * l1 * l2sq)
    return 2.0 * (1.0 + 2.0 * l2sq - root) / (1.0 + l2sq)


def solve_threshold(f: Callable[[float], float], bound: float, interval: tuple[float, float],
                    xtol: float = 1e-10, max_iter: int = 200) -> float:
    """Bisection for ``f(x) = bound`` on a bracketing interval."""
    lo, hi = interval
    g_lo = f(lo) - bound
    g_hi = f(hi) - bound
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if (g_lo > 0) == (g_hi > 0):
        raise NoCrossingError(f"no sign change of f - {bound:.12g} on [{lo:.12g}, {hi:.12g}]")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        g_mid = f(mid) - bound
        if g_mid == 0.0:
            return mid
        if (g_mid > 0) == (g_lo > 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
        if hi - lo <= xtol:
            break
    return 0.5 * (lo + hi)


def alice2_upper_l1() -> float:
    """Largest Alice^1 sharpness that still lets a sharp Alice^2 violate the l1 bound."""
    return solve_threshold(lambda l1: n2_l1(l1, 1.0), SQRT6, (0.1, 0.99))


_ALICE1_CLOSED = {
    CoherenceMeasure.L1: n1_l1,
    CoherenceMeasure.RELATIVE_ENTROPY: n1_e,
    CoherenceMeasure.SKEW_INFORMATION: n1_s,
}

_ALICE2_CLOSED = {
    CoherenceMeasure.L1: n2_l1,
    CoherenceMeasure.RELATIVE_ENTROPY: n2_e,
    CoherenceMeasure.SKEW_INFORMATION: n2_s,
}


def closed_form(measure: CoherenceMeasure, lambdas: Sequence[float]) -> float:
    """Closed-form averaged NAQC value for the singlet and a sharpness chain."""
    measure = CoherenceMeasure(measure)
    n = len(lambdas)
    if n == 1:
        return _ALICE1_CLOSED[measure](*lambdas)
    if n == 2:
        return _ALICE2_CLOSED[measure](*lambdas)
    if n == 3 and measure is CoherenceMeasure.L1:
        return n3_l1(*lambdas)
    raise ValueError(f"no closed form for {measure.value} with {n} Alices")


def alice1_threshold(measure: CoherenceMeasure, bound: float | None = None) -> float:
    measure = CoherenceMeasure(measure)
    bound = measure.bound if bound is None else bound
    return solve_threshold(_ALICE1_CLOSED[measure], bound, (0.05, 1.0))


def constrained_max(measure: CoherenceMeasure, which_alice: int) -> float:
    """Supremum of the sharp target Alice's NAQC while every predecessor violates.

    Every closed form decreases with predecessor sharpness, so the supremum
    sits where each predecessor only marginally violates.
    """
    measure = CoherenceMeasure(measure)
    if which_alice == 2:
        return closed_form(measure, (alice1_threshold(measure), 1.0))
    if which_alice == 3 and measure is CoherenceMeasure.L1:
        l1 = alice1_threshold(measure)
        l2 = solve_threshold(lambda lam: n2_l1(l1, lam), SQRT6, (0.05, 1.0))
        return n3_l1(l1, l2, 1.0)
    raise ValueError(f"constrained maximum unsupported for {measure.value}, Alice^{which_alice}")


@dataclass(frozen=True)
class ThresholdReport:
    measure: CoherenceMeasure
    which_alice: int
    threshold: float
    closed_form: str | None = None


def _exact_tag(value: float, tol: float = 1e-7) -> str | None:
    for tag, exact in EXACT_FORMS.items():
        if abs(value - exact) <= tol:
            return tag
    return None


def simulated_threshold(measure: CoherenceMeasure, predecessors: Sequence[float] = (),
                        initial=None, bound: float | None = None) -> ThresholdReport:
    """Sharpness above which the next Alice violates, by bisection on the simulation.

    ``predecessors`` fixes the sharpness of the earlier Alices; the target is
    Alice number ``len(predecessors) + 1``.
    """
    measure = CoherenceMeasure(measure)
    bound = measure.bound if bound is None else bound
    initial = singlet() if initial is None else initial
    prefix = tuple(float(x) for x in predecessors)

    def value(lam: float) -> float:
        return sequential_naqc(initial, ScenarioConfig.of(prefix + (lam,), measure)).value

    lam = solve_threshold(value, bound, (1e-6, 1.0))
    return ThresholdReport(measure, len(prefix) + 1, lam, _exact_tag(lam) if not prefix else None)


def threshold_curve(measure: CoherenceMeasure, lambda1_values: Sequence[float]) -> list[tuple[float, float | None]]:
    """Alice^2 threshold as a function of Alice^1 sharpness (``None`` if never violated)."""
    out = []
    for l1 in lambda1_values:
        try:
            out.append((l1, simulated_threshold(measure, (l1,)).threshold))
        except NoCrossingError:
            out.append((l1, None))
    return out


def relent_threshold_sensitivity(bounds: Sequence[float] = (2.22, 2.225, 2.23, 2.235, 2.24)) -> list[tuple[float, float]]:
    """Alice^1 relative-entropy threshold for a range of bound constants."""
    return [(b, alice1_threshold(CoherenceMeasure.RELATIVE_ENTROPY, b)) for b in bounds]
