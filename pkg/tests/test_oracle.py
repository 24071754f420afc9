import math

import numpy as np
import pytest

from naqc import oracle
from naqc.coherence import CoherenceMeasure

L1 = CoherenceMeasure.L1
RELENT = CoherenceMeasure.RELATIVE_ENTROPY
SKEW = CoherenceMeasure.SKEW_INFORMATION
SQRT6 = math.sqrt(6)
A1_L1 = (math.sqrt(3) - 1) / math.sqrt(2)
UPPER_L1 = 0.5 * math.sqrt(2 * SQRT6 - 3)


def test_n1_l1():
    assert oracle.n1_l1(1.0) == 3
    assert oracle.n1_l1(A1_L1) == pytest.approx(SQRT6, abs=1e-12)
    assert oracle.n1_l1(0.5) == pytest.approx(2.4, abs=1e-12)


def test_n2_l1():
    for l2 in (0.2, 0.7, 1.0):
        assert oracle.n2_l1(1e-12, l2) == pytest.approx(oracle.n1_l1(l2), abs=1e-9)
    assert oracle.n2_l1(A1_L1, 1.0) == pytest.approx(2.7112, abs=1e-4)
    assert oracle.n2_l1(0.6, 1.0) == pytest.approx(2.6, abs=1e-12)


def test_n3_l1():
    assert oracle.n3_l1(1e-9, 1e-9, 1.0) == pytest.approx(3.0, abs=1e-9)
    l2 = oracle.solve_threshold(lambda x: oracle.n2_l1(A1_L1, x), SQRT6, (0.1, 1.0))
    assert l2 == pytest.approx(0.6324, abs=1e-4)
    assert oracle.n3_l1(A1_L1, l2, 1.0) == pytest.approx(2.304, abs=1e-3)
    assert oracle.n3_l1(0.9, 0.9, 1.0) < SQRT6


def test_n1_e():
    assert oracle.n1_e(1.0) == 3.0
    assert oracle.n1_e(1 - 1e-9) == pytest.approx(3.0, abs=1e-9)
    assert oracle.n1_e(0.65) == pytest.approx(2.23, abs=0.01)


def test_entropic_pair_against_direct_atanh():
    for lam in np.linspace(0.05, 0.95, 19):
        direct = (2 * lam / (1 + lam ** 2) * math.atanh(lam) - math.atanh(lam ** 2)) / math.log(2)
        assert oracle._entropic_pair(lam) == pytest.approx(direct, abs=1e-13)


def test_n2_e():
    assert oracle.n2_e(0.65, 1.0) == pytest.approx(1.941, abs=1e-3)
    assert oracle.n2_e(0.65, 1.0) == pytest.approx(oracle.n2_e(0.65, 1 - 1e-8), abs=1e-7)
    for l2 in (0.3, 0.8, 1.0):
        assert oracle.n2_e(1e-12, l2) == pytest.approx(oracle.n1_e(l2), abs=1e-9)
    for l1 in np.linspace(0.651, 0.999, 30):
        assert max(oracle.n2_e(l1, l2) for l2 in np.linspace(0.01, 1.0, 100)) < 2.23


def test_n1_s_and_n2_s():
    assert oracle.n1_s(1.0) == 3
    assert oracle.n1_s(1 / math.sqrt(2)) == pytest.approx(2.0, abs=1e-12)
    assert oracle.n1_s(0.5) == pytest.approx(1.2, abs=1e-12)
    assert oracle.n2_s(1 / math.sqrt(2), 1.0) == pytest.approx(3 - math.sqrt(2), abs=1e-12)
    assert oracle.n2_s(1.0, 1.0) == pytest.approx(1.0, abs=1e-12)
    for l2 in (0.3, 0.8, 1.0):
        assert oracle.n2_s(1e-12, l2) == pytest.approx(oracle.n1_s(l2), abs=1e-9)


@pytest.mark.parametrize("fn", [oracle.n1_l1, oracle.n1_e, oracle.n1_s])
def test_domain_errors(fn):
    for bad in (0.0, 1.5, -0.2):
        with pytest.raises(ValueError):
            fn(bad)


def test_solve_threshold():
    assert oracle.solve_threshold(oracle.n1_l1, SQRT6, (0.1, 1.0)) == pytest.approx(A1_L1, abs=1e-9)
    assert oracle.solve_threshold(oracle.n1_s, 2.0, (0.1, 1.0)) == pytest.approx(1 / math.sqrt(2), abs=1e-9)
    assert oracle.solve_threshold(oracle.n1_e, 2.23, (0.1, 0.99)) == pytest.approx(0.65, abs=0.005)
    with pytest.raises(oracle.NoCrossingError):
        oracle.solve_threshold(oracle.n1_s, 4.0, (0.1, 1.0))


def test_solve_threshold_iteration_cap():
    calls = []

    def f(x):
        calls.append(x)
        return x

    oracle.solve_threshold(f, 0.3, (0.0, 1.0))
    assert len(calls) <= 202


def test_alice2_upper():
    upper = oracle.alice2_upper_l1()
    assert upper == pytest.approx(UPPER_L1, abs=1e-9)
    assert upper == pytest.approx(0.69, abs=0.005)
    assert oracle.n2_l1(upper, 1.0) == pytest.approx(SQRT6, abs=1e-9)
    assert upper > A1_L1


def test_constrained_max():
    assert oracle.constrained_max(L1, 2) == pytest.approx(2.7112, abs=1e-4)
    assert oracle.constrained_max(L1, 3) == pytest.approx(2.304, abs=1e-3)
    assert oracle.constrained_max(SKEW, 2) == pytest.approx(3 - math.sqrt(2), abs=1e-9)
    assert oracle.constrained_max(RELENT, 2) == pytest.approx(1.94, abs=0.01)
    with pytest.raises(ValueError):
        oracle.constrained_max(SKEW, 3)
    with pytest.raises(ValueError):
        oracle.constrained_max(L1, 4)


def _feasible_grid_max(measure, step=0.005):
    """Brute force over predecessors where every earlier Alice violates."""
    grid = np.arange(step, 1.0, step)
    bound = measure.bound
    best = -np.inf
    for l1 in grid:
        if oracle.closed_form(measure, (l1,)) <= bound:
            continue
        if measure is L1:
            for l2 in grid:
                if oracle.n2_l1(l1, l2) > bound:
                    best = max(best, oracle.n3_l1(l1, l2, 1.0))
        else:
            best = max(best, oracle.closed_form(measure, (l1, 1.0)))
    return best


def test_constrained_max_not_exceeded_by_grid():
    assert _feasible_grid_max(L1) <= oracle.constrained_max(L1, 3) + 1e-6
    assert _feasible_grid_max(SKEW) <= oracle.constrained_max(SKEW, 2) + 1e-6
    assert _feasible_grid_max(RELENT) <= oracle.constrained_max(RELENT, 2) + 1e-6


def test_monotone_in_predecessors():
    grid = np.linspace(0.01, 0.99, 80)
    for l2 in (0.3, 0.7, 1.0):
        for fn in (oracle.n2_l1, oracle.n2_s):
            vals = [fn(l1, l2) for l1 in grid]
            assert all(b < a for a, b in zip(vals, vals[1:]))
    for fixed in (0.2, 0.6, 0.9):
        a = [oracle.n3_l1(x, fixed, 1.0) for x in grid]
        b = [oracle.n3_l1(fixed, x, 1.0) for x in grid]
        assert all(v < u for u, v in zip(a, a[1:]))
        assert all(v < u for u, v in zip(b, b[1:]))


def test_bounded_by_three():
    grid = np.linspace(0.01, 1.0, 60)
    for x in grid:
        assert oracle.n1_l1(x) <= 3 and oracle.n1_e(x) <= 3 + 1e-12 and oracle.n1_s(x) <= 3
        for y in grid:
            assert oracle.n2_l1(x, y) <= 3 and oracle.n2_e(x, y) <= 3 + 1e-12 and oracle.n2_s(x, y) <= 3 + 1e-12
            assert oracle.n3_l1(x, y, 1.0) <= 3


def test_simulated_threshold_reports():
    rep = oracle.simulated_threshold(L1)
    assert rep.which_alice == 1 and rep.closed_form == "(sqrt(3)-1)/sqrt(2)"
    assert rep.threshold == pytest.approx(A1_L1, abs=1e-9)
    rep = oracle.simulated_threshold(SKEW)
    assert rep.closed_form == "1/sqrt(2)"
    rep = oracle.simulated_threshold(L1, (0.517638,))
    assert rep.which_alice == 2 and rep.threshold == pytest.approx(0.632, abs=0.005)
    with pytest.raises(oracle.NoCrossingError):
        oracle.simulated_threshold(RELENT, (0.7,))


def test_threshold_curve_increasing():
    curve = oracle.threshold_curve(L1, [0.52, 0.58, 0.64, 0.68, 0.7])
    values = [t for _, t in curve[:-1]]
    assert all(b > a for a, b in zip(values, values[1:]))
    assert curve[-1][1] is None


def test_relent_sensitivity():
    rows = oracle.relent_threshold_sensitivity()
    thresholds = [t for _, t in rows]
    assert all(b > a for a, b in zip(thresholds, thresholds[1:]))
    assert all(abs(t - 0.65) <= 0.005 for t in thresholds)
