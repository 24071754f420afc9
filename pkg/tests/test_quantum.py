import math

import numpy as np
import pytest

from naqc import quantum as q
from naqc.quantum import Outcome, PauliAxis

PLUS, MINUS = Outcome.PLUS, Outcome.MINUS
KET0 = np.diag([1.0, 0.0])
KET1 = np.diag([0.0, 1.0])
KET_PLUS = 0.5 * np.ones((2, 2))
KET_MINUS = 0.5 * np.array([[1, -1], [-1, 1]])
LAMBDA_GRID = [round(0.05 * k, 2) for k in range(1, 21)]


def product(a, b):
    return q.DensityMatrix(np.kron(a, b))


def test_pauli():
    assert np.allclose(q.pauli(PauliAxis.Z), np.diag([1, -1]))
    assert np.allclose(q.pauli(PauliAxis.X), [[0, 1], [1, 0]])
    assert np.allclose(q.pauli(PauliAxis.Y), [[0, -1j], [1j, 0]])


def test_projector():
    assert np.allclose(q.projector(PauliAxis.Z, PLUS), KET0)
    assert np.allclose(q.projector(PauliAxis.X, PLUS), KET_PLUS)
    assert np.allclose(q.projector(PauliAxis.Y, PLUS) + q.projector(PauliAxis.Y, MINUS), np.eye(2))
    for axis in q.AXES:
        p = q.projector(axis, MINUS)
        assert np.allclose(p @ p, p)
        assert np.linalg.matrix_rank(p) == 1


def test_effect_examples():
    assert np.allclose(q.effect(PauliAxis.Z, PLUS, 1.0).matrix, KET0)
    assert np.allclose(q.effect(PauliAxis.Z, PLUS, 0.5).matrix, np.diag([0.75, 0.25]))
    assert np.allclose(q.effect(PauliAxis.X, MINUS, 1.0).matrix, KET_MINUS)


@pytest.mark.parametrize("axis", q.AXES)
@pytest.mark.parametrize("lam", LAMBDA_GRID)
def test_effect_pairs_complete(axis, lam):
    total = q.effect(axis, PLUS, lam).matrix + q.effect(axis, MINUS, lam).matrix
    assert np.array_equal(total, np.eye(2))
    vals = np.linalg.eigvalsh(q.effect(axis, PLUS, lam).matrix)
    assert vals.min() >= -1e-15 and vals.max() <= 1 + 1e-15


@pytest.mark.parametrize("bad", [0.0, -0.1, 1.0000001, float("nan")])
def test_sharpness_domain(bad):
    with pytest.raises(ValueError):
        q.Sharpness(bad)


def test_weak_equivalents():
    assert q.weak_equivalents(1.0) == (0.0, 1.0)
    f, g = q.weak_equivalents(0.6)
    assert f == pytest.approx(0.8, abs=1e-15) and g == 0.6
    f, g = q.weak_equivalents(1 / math.sqrt(2))
    assert f == pytest.approx(1 / math.sqrt(2), abs=1e-15) and g == pytest.approx(1 / math.sqrt(2))


def test_tradeoff_machine_precision():
    for lam in np.linspace(1e-6, 1.0, 1001):
        f, g = q.weak_equivalents(lam)
        assert abs(f * f + g * g - 1.0) <= 4 * np.finfo(float).eps


def test_singlet():
    s = q.singlet()
    assert np.trace(s.matrix).real == pytest.approx(1.0)
    assert s.matrix[1, 1].real == pytest.approx(0.5)
    assert np.allclose(q.partial_trace(s, "A").matrix, np.eye(2) / 2)
    assert np.allclose(q.partial_trace(s, "B").matrix, np.eye(2) / 2)


def test_partial_trace():
    rng = np.random.default_rng(1)
    rho_a, rho_b = q.random_qubit_state(1).matrix, q.random_qubit_state(2).matrix
    assert np.allclose(q.partial_trace(product(rho_a, rho_b), "A").matrix, rho_b)
    assert np.allclose(q.partial_trace(product(rho_a, rho_b), "B").matrix, rho_a)
    assert np.allclose(q.partial_trace(product(KET0, KET0), "A").matrix, KET0)
    with pytest.raises(ValueError):
        q.partial_trace(q.random_two_qubit_state(rng), "C")
    with pytest.raises(ValueError):
        q.partial_trace(KET0, "A")


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        q.DensityMatrix(np.diag([0.5, 0.6]))
    with pytest.raises(ValueError):
        q.DensityMatrix(np.diag([1.5, -0.5]))
    with pytest.raises(ValueError):
        q.DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))
    state = q.DensityMatrix(KET0)
    with pytest.raises(ValueError):
        state.matrix[0, 0] = 0.3


def test_luders_examples():
    s = q.singlet()
    tiny = q.luders_nonselective(s, PauliAxis.X, 1e-6)
    assert np.allclose(tiny.matrix, s.matrix, atol=1e-11)
    zz = product(KET0, KET0)
    assert np.allclose(q.luders_nonselective(zz, PauliAxis.Z, 1.0).matrix, zz.matrix)
    expected = 0.5 * (np.kron(KET0, KET1) + np.kron(KET1, KET0))
    assert np.allclose(q.luders_nonselective(s, PauliAxis.Z, 1.0).matrix, expected)


def test_luders_preserves_states():
    rng = np.random.default_rng(2024)
    for n in range(10_000):
        state = q.random_two_qubit_state(rng, mixture=1 + n % 3)
        axis = q.AXES[n % 3]
        lam = rng.uniform(0.01, 1.0)
        out = q.luders_nonselective(state, axis, lam).matrix
        assert abs(np.trace(out) - 1.0) <= 1e-12
        assert np.max(np.abs(out - out.conj().T)) <= 1e-12
        assert np.linalg.eigvalsh(out).min() >= -1e-12


def test_conditional_examples():
    s = q.singlet()
    prob, rho = q.conditional_state(s, q.effect(PauliAxis.Z, PLUS, 1.0))
    assert prob == pytest.approx(0.5) and np.allclose(rho.matrix, KET1)
    prob, rho = q.conditional_state(s, q.effect(PauliAxis.Z, PLUS, 0.5))
    assert prob == pytest.approx(0.5) and np.allclose(rho.matrix, np.diag([0.25, 0.75]))

    rho_a, rho_b = q.random_qubit_state(7).matrix, q.random_qubit_state(8).matrix
    e = q.effect(PauliAxis.Y, MINUS, 0.37)
    prob, rho = q.conditional_state(product(rho_a, rho_b), e)
    assert prob == pytest.approx(np.trace(e.matrix @ rho_a).real)
    assert np.allclose(rho.matrix, rho_b)


def test_probabilities_sum_to_one():
    rng = np.random.default_rng(3)
    for _ in range(500):
        state = q.random_two_qubit_state(rng, mixture=2)
        lam = rng.uniform(0.01, 1.0)
        for axis in q.AXES:
            for cond in (q.conditional_state, q.kraus_conditional_state):
                total = sum(cond(state, q.effect(axis, o, lam)).prob for o in q.OUTCOMES)
                assert abs(total - 1.0) <= 1e-12


def test_sharp_effect_matches_projector_conditioning():
    rng = np.random.default_rng(4)
    for _ in range(300):
        m = q.random_two_qubit_state(rng, mixture=2).matrix
        for axis in q.AXES:
            for outcome in q.OUTCOMES:
                _, rho = q.conditional_state(m, q.effect(axis, outcome, 1.0))
                op = np.kron(q.projector(axis, outcome), np.eye(2)) @ m
                direct = np.einsum("abad->bd", op.reshape(2, 2, 2, 2)) / np.trace(op).real
                assert np.max(np.abs(rho.matrix - direct)) <= 1e-12
                _, rho_k = q.kraus_conditional_state(m, q.effect(axis, outcome, 1.0))
                assert np.max(np.abs(rho_k.matrix - direct)) <= 1e-12


def test_kraus_conditioning_on_singlet():
    # the effect applied on both sides sharpens Bob's Bloch vector to 2 lam / (1 + lam^2)
    lam = 0.5
    prob, rho = q.kraus_conditional_state(q.singlet(), q.effect(PauliAxis.Z, PLUS, lam))
    assert prob == pytest.approx(0.5)
    assert q.bloch_vector(rho.matrix)[2] == pytest.approx(-2 * lam / (1 + lam * lam))


def test_degenerate_branch():
    zz = product(KET0, KET0)
    cond = q.conditional_state(zz, q.effect(PauliAxis.Z, MINUS, 1.0))
    assert cond.degenerate and cond.prob == pytest.approx(0.0)
    assert q.kraus_conditional_state(zz, q.effect(PauliAxis.Z, MINUS, 1.0)).degenerate


def test_random_qubit_state():
    for seed in range(200):
        state = q.random_qubit_state(seed)
        assert q.is_state(state.matrix)
        assert np.linalg.norm(q.bloch_vector(state.matrix)) <= 1.0
    assert np.array_equal(q.random_qubit_state(42).matrix, q.random_qubit_state(42).matrix)
