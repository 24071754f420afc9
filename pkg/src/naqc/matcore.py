"""Small dense complex matrix kernel for qubit (2x2) and two-qubit (4x4) operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Only the
dimensions 2 and 4 are accepted; the Hermitian decompositions are closed
form and restricted to 2x2.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-9
CLIP_TOL = 1e-12
ROUNDOFF_FLOOR = 8 * np.finfo(float).eps

_DIMS = (2, 4)


class Spectrum2(NamedTuple):
    """Eigen-decomposition of a 2x2 Hermitian matrix.

    ``eigenvalues`` are sorted descending, ``eigenvectors`` holds the
    matching unit vectors as columns.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_matrix(a, dims: tuple[int, ...] = _DIMS) -> np.ndarray:
    """Coerce ``a`` to a complex square matrix of an allowed dimension."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in dims:
        raise ValueError(f"expected a square matrix of dimension {dims}, got shape {m.shape}")
    return m


def multiply(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 operators, subsystem ``a`` first."""
    return np.kron(as_matrix(a, (2,)), as_matrix(b, (2,)))


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    m = as_matrix(a)
    return bool(np.max(np.abs(m - m.conj().T)) <= tol)


def _scaled(v: np.ndarray, scale: float) -> np.ndarray:
    # real and imaginary parts separately: complex division by a subnormal yields nan
    return v.real / scale + 1j * (v.imag / scale)


def _unit(v: np.ndarray) -> np.ndarray:
    v = _scaled(v, float(np.max(np.abs(v))))
    return v / np.linalg.norm(v)


def eig_hermitian_2(h) -> Spectrum2:
    """Closed-form eigen-decomposition of a 2x2 Hermitian matrix.

    Writes ``h = c*I + x*sx + y*sy + z*sz`` and reads off the eigenvalues
    ``c +/- |(x, y, z)|``. A degenerate spectrum returns the computational
    basis.
    """
    m = as_matrix(h, (2,))
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian")
    scale = float(np.max(np.abs(m)))
    if scale == 0.0:
        return Spectrum2(np.zeros(2), np.eye(2, dtype=np.complex128))
    m = _scaled(m, scale)
    c = 0.5 * (m[0, 0].real + m[1, 1].real)
    z = 0.5 * (m[0, 0].real - m[1, 1].real)
    off = 0.5 * (m[1, 0] + m[0, 1].conjugate())  # x + i*y
    r = np.hypot(z, abs(off))
    values = scale * np.array([c + r, c - r])
    if r == 0.0:
        return Spectrum2(values, np.eye(2, dtype=np.complex128))

    # top eigenvector of the traceless part (z, off) / r
    if z >= 0:
        v_top = np.array([r + z, off], dtype=np.complex128)
    else:
        v_top = np.array([off.conjugate(), r - z], dtype=np.complex128)
    v_top = _unit(v_top)
    v_bot = np.array([-v_top[1].conjugate(), v_top[0].conjugate()])
    return Spectrum2(values, np.column_stack([v_top, v_bot]))


def _clipped_spectrum(rho) -> Spectrum2:
    spec = eig_hermitian_2(rho)
    if spec.eigenvalues[-1] < -CLIP_TOL:
        raise ValueError(f"matrix is not positive semidefinite (eigenvalue {spec.eigenvalues[-1]:.3e})")
    vals = spec.eigenvalues.copy()
    # below the closed-form round-off level an eigenvalue is indistinguishable from 0
    vals[vals < ROUNDOFF_FLOOR * max(vals[0], 1.0)] = 0.0
    return Spectrum2(vals, spec.eigenvectors)


def sqrt_psd_2(rho) -> np.ndarray:
    """Principal square root of a 2x2 positive semidefinite matrix."""
    vals, vecs = _clipped_spectrum(rho)
    return (vecs * np.sqrt(vals)) @ vecs.conj().T


def binary_entropy(p: float) -> float:
    """Shannon entropy of ``(p, 1 - p)`` in bits."""
    return _entropy_bits(np.array([p, 1.0 - p]))


def _entropy_bits(probs: np.ndarray) -> float:
    probs = probs[probs > 0.0]
    return float(-np.sum(probs * np.log2(probs)) + 0.0)


def von_neumann_entropy(rho) -> float:
    """Von Neumann entropy in bits of a single-qubit state."""
    m = as_matrix(rho, (2,))
    if abs(np.trace(m) - 1.0) > HERMITIAN_TOL:
        raise ValueError("state must have unit trace")
    vals, _ = _clipped_spectrum(m)
    return _entropy_bits(vals)
