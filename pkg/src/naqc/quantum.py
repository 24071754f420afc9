"""Qubit states, Pauli-axis unsharp measurements and the Lüders channel.

Two-qubit operators are ordered with Alice's qubit (A) first, so an
operator ``E`` acting on Alice alone is ``kron(E, I2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import matcore
from .matcore import CLIP_TOL, HERMITIAN_TOL

DEGENERATE_PROB = 1e-12

I2 = np.eye(2, dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)


class PauliAxis(enum.Enum):
    X = "x"
    Y = "y"
    Z = "z"


class Outcome(enum.IntEnum):
    """Dichotomic outcome; ``PLUS`` is ``a = 0`` and ``MINUS`` is ``a = 1``."""

    PLUS = 0
    MINUS = 1

    @property
    def sign(self) -> int:
        return 1 if self is Outcome.PLUS else -1


AXES = tuple(PauliAxis)
OUTCOMES = tuple(Outcome)

_PAULI = {
    PauliAxis.X: np.array([[0, 1], [1, 0]], dtype=np.complex128),
    PauliAxis.Y: np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    PauliAxis.Z: np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


def pauli(axis: PauliAxis) -> np.ndarray:
    return _PAULI[PauliAxis(axis)].copy()


def projector(axis: PauliAxis, outcome: Outcome) -> np.ndarray:
    """Rank-one projector ``(I +/- sigma_axis) / 2``."""
    return 0.5 * (I2 + Outcome(outcome).sign * _PAULI[PauliAxis(axis)])


@dataclass(frozen=True)
class Sharpness:
    """Sharpness ``lam`` of an unsharp measurement, ``0 < lam <= 1``."""

    lam: float

    def __post_init__(self):
        lam = float(self.lam)
        if not (0.0 < lam <= 1.0) or math.isnan(lam):
            raise ValueError(f"sharpness must lie in (0, 1], got {self.lam!r}")
        object.__setattr__(self, "lam", lam)

    @property
    def quality(self) -> float:
        """Quality factor ``F = sqrt(1 - lam**2)``."""
        return math.sqrt(1.0 - self.lam * self.lam)

    @property
    def precision(self) -> float:
        return self.lam


def _sharpness(s) -> Sharpness:
    return s if isinstance(s, Sharpness) else Sharpness(s)


@dataclass(frozen=True)
class Effect:
    axis: PauliAxis
    outcome: Outcome
    sharpness: Sharpness
    matrix: np.ndarray = field(repr=False, compare=False)


def effect(axis: PauliAxis, outcome: Outcome, s: Sharpness | float) -> Effect:
    """Unsharp effect ``lam * P + (1 - lam)/2 * I`` along a Pauli axis."""
    s = _sharpness(s)
    axis, outcome = PauliAxis(axis), Outcome(outcome)
    plus = s.lam * projector(axis, Outcome.PLUS) + 0.5 * (1.0 - s.lam) * I2
    # complement keeps E+ + E- == I bit-exact
    matrix = plus if outcome is Outcome.PLUS else I2 - plus
    matrix.setflags(write=False)
    return Effect(axis, outcome, s, matrix)


def weak_equivalents(s: Sharpness | float) -> tuple[float, float]:
    """Return the weak-measurement ``(quality F, precision G)`` pair."""
    s = _sharpness(s)
    return s.quality, s.precision


class DensityMatrix:
    """Validated density matrix: Hermitian, unit trace, positive semidefinite.

    Wraps a read-only complex array; ``np.asarray(state)`` returns it.
    """

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        m = matcore.as_matrix(matrix).copy()
        _check_state(m)
        m.setflags(write=False)
        self.matrix = m

    def __array__(self, dtype=None, copy=None):
        return self.matrix if dtype is None else self.matrix.astype(dtype)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self) -> str:
        return f"DensityMatrix({np.array2string(self.matrix, precision=6)})"


def _check_state(m: np.ndarray) -> None:
    if not matcore.is_hermitian(m):
        raise ValueError("state is not Hermitian")
    if abs(np.trace(m) - 1.0) > HERMITIAN_TOL:
        raise ValueError(f"state trace is {np.trace(m).real:.12g}, expected 1")
    herm = 0.5 * (m + m.conj().T)
    lowest = np.linalg.eigvalsh(herm)[0]
    if lowest < -CLIP_TOL:
        raise ValueError(f"state has negative eigenvalue {lowest:.3e}")


def is_state(matrix) -> bool:
    try:
        _check_state(matcore.as_matrix(matrix))
    except ValueError:
        return False
    return True


def _state(state, dim: int) -> np.ndarray:
    if not isinstance(state, DensityMatrix):
        state = DensityMatrix(state)
    if state.dim != dim:
        raise ValueError(f"expected a {dim}x{dim} state, got dimension {state.dim}")
    return state.matrix


def pure_state(ket) -> DensityMatrix:
    v = np.asarray(ket, dtype=np.complex128)
    v = v / np.linalg.norm(v)
    return DensityMatrix(np.outer(v, v.conj()))


def singlet() -> DensityMatrix:
    """``|psi-> = (|01> - |10>) / sqrt(2)`` as a density matrix."""
    return pure_state([0.0, 1.0, -1.0, 0.0])


def bloch_state(r) -> DensityMatrix:
    x, y, z = (float(c) for c in r)
    return DensityMatrix(0.5 * (I2 + x * _PAULI[PauliAxis.X] + y * _PAULI[PauliAxis.Y] + z * _PAULI[PauliAxis.Z]))


def bloch_vector(rho) -> np.ndarray:
    m = np.asarray(rho)
    return np.array([np.trace(m @ _PAULI[a]).real for a in AXES])


def partial_trace(state, over: str) -> DensityMatrix:
    """Reduced state after tracing out subsystem ``"A"`` or ``"B"``."""
    m = _state(state, 4).reshape(2, 2, 2, 2)
    if over == "A":
        return DensityMatrix(np.einsum("abad->bd", m))
    if over == "B":
        return DensityMatrix(np.einsum("abcb->ac", m))
    raise ValueError(f"subsystem must be 'A' or 'B', got {over!r}")


def _trace_out_a(m: np.ndarray) -> np.ndarray:
    return np.einsum("abad->bd", m.reshape(2, 2, 2, 2))


def _dephase_a(m: np.ndarray, axis: PauliAxis) -> np.ndarray:
    out = np.zeros_like(m)
    for outcome in OUTCOMES:
        p = np.kron(projector(axis, outcome), I2)
        out += p @ m @ p
    return out


def luders_nonselective(state, axis: PauliAxis, s: Sharpness | float) -> DensityMatrix:
    """Post-measurement state when Alice measures ``axis`` unsharply and forgets the outcome.

    ``F * sigma + (1 - F) * sum_pm (P_pm x I) sigma (P_pm x I)`` with
    ``F = sqrt(1 - lam**2)``.
    """
    m = _state(state, 4)
    f = _sharpness(s).quality
    return DensityMatrix(f * m + (1.0 - f) * _dephase_a(m, PauliAxis(axis)))


class Conditional(NamedTuple):
    """Outcome probability and Bob's normalised state (``None`` if degenerate)."""

    prob: float
    rho_b: DensityMatrix | None

    @property
    def degenerate(self) -> bool:
        return self.rho_b is None


def _normalised(unnormalised: np.ndarray, prob: float) -> DensityMatrix | None:
    if prob < DEGENERATE_PROB:
        return None
    rho = unnormalised / np.trace(unnormalised).real
    return DensityMatrix(0.5 * (rho + rho.conj().T))


def conditional_state(state, e: Effect) -> Conditional:
    """Bob's state conditioned on Alice's effect, ``Tr_A[(E x I) sigma] / p``."""
    m = _state(state, 4)
    op = np.kron(e.matrix, I2) @ m
    prob = float(np.trace(op).real)
    return Conditional(prob, _normalised(_trace_out_a(op), prob))


def kraus_conditional_state(state, e: Effect) -> Conditional:
    """Bob's state after Alice applies the effect itself as the update operator.

    The outcome weight is the Born probability ``Tr[(E x I) sigma]``; Bob's
    state is ``Tr_A[(E x I) sigma (E x I)]`` renormalised. This is the
    conditioning under which the sequential NAQC functionals are evaluated.
    """
    m = _state(state, 4)
    k = np.kron(e.matrix, I2)
    prob = float(np.trace(k @ m).real)
    post = _trace_out_a(k @ m @ k)
    if np.trace(post).real < DEGENERATE_PROB:
        return Conditional(prob, None)
    return Conditional(prob, _normalised(post, prob))


def random_qubit_state(seed: int) -> DensityMatrix:
    """Qubit state drawn uniformly from the Bloch ball."""
    rng = np.random.default_rng(seed)
    return bloch_state(random_bloch_vectors(rng, 1)[0])


def random_bloch_vectors(rng: np.random.Generator, n: int) -> np.ndarray:
    """``n`` points uniform in the unit ball by rejection from the cube."""
    out = np.empty((0, 3))
    while len(out) < n:
        cand = rng.uniform(-1.0, 1.0, size=(2 * (n - len(out)) + 8, 3))
        out = np.vstack([out, cand[np.einsum("ij,ij->i", cand, cand) <= 1.0]])
    return out[:n]


def random_two_qubit_state(rng: np.random.Generator, mixture: int = 1) -> DensityMatrix:
    """Mixture of ``mixture`` Haar-random pure two-qubit states with Dirichlet weights."""
    kets = rng.normal(size=(mixture, 4)) + 1j * rng.normal(size=(mixture, 4))
    kets /= np.linalg.norm(kets, axis=1, keepdims=True)
    weights = rng.dirichlet(np.ones(mixture)) if mixture > 1 else np.ones(1)
    return DensityMatrix(np.einsum("k,ki,kj->ij", weights, kets, kets.conj()))
