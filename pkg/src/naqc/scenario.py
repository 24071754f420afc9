"""NAQC functionals and the sequential-Alice scenario with unbiased setting averaging.

Several Alices measure the same half of a shared two-qubit state one after
another. Each predecessor measures one of the Pauli axes with an unsharp
effect and passes the qubit on; the next Alice does not know which axes
were used, so her NAQC value is the uniform average over all predecessor
setting chains.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .coherence import CoherenceMeasure, coherence_of
from .quantum import (
    AXES,
    OUTCOMES,
    Sharpness,
    _dephase_a,
    _state,
    _trace_out_a,
    effect,
    I2,
    singlet,
)

DEGENERATE_WEIGHT = 1e-12
REFINE_OFFSET = 1e-6


@dataclass(frozen=True)
class ScenarioConfig:
    """Sharpness of Alice^1 ... Alice^n; NAQC is evaluated for the last one."""

    sharpness_chain: tuple[Sharpness, ...]
    measure: CoherenceMeasure

    def __post_init__(self):
        chain = tuple(s if isinstance(s, Sharpness) else Sharpness(s) for s in self.sharpness_chain)
        if not chain:
            raise ValueError("the sharpness chain needs at least one Alice")
        for k, s in enumerate(chain[:-1], start=1):
            if s.lam >= 1.0:
                raise ValueError(f"predecessor Alice^{k} must measure unsharply (lambda < 1)")
        object.__setattr__(self, "sharpness_chain", chain)
        object.__setattr__(self, "measure", CoherenceMeasure(self.measure))

    @classmethod
    def of(cls, lambdas: Sequence[float], measure: CoherenceMeasure) -> "ScenarioConfig":
        return cls(tuple(Sharpness(x) for x in lambdas), measure)

    @property
    def target_index(self) -> int:
        return len(self.sharpness_chain)

    @property
    def lambdas(self) -> tuple[float, ...]:
        return tuple(s.lam for s in self.sharpness_chain)


@dataclass(frozen=True)
class NaqcResult:
    value: float
    bound: float
    violated: bool
    config: ScenarioConfig


def _effect_matrices(lam: float) -> list[tuple[object, np.ndarray]]:
    return [(axis, np.kron(effect(axis, outcome, lam).matrix, I2)) for axis in AXES for outcome in OUTCOMES]


def _naqc_raw(m: np.ndarray, measure: CoherenceMeasure, effects) -> float:
    total = 0.0
    for axis, k in effects:
        km = k @ m
        prob = np.trace(km).real
        if prob < DEGENERATE_WEIGHT:
            continue
        post = _trace_out_a(km @ k)
        rho_b = post / np.trace(post).real
        rho_b = 0.5 * (rho_b + rho_b.conj().T)
        for basis in AXES:
            if basis is not axis:
                total += prob * coherence_of(rho_b, measure, basis)
    return 0.5 * total


def naqc_value(state, measure: CoherenceMeasure, alice_sharpness: Sharpness | float) -> float:
    """NAQC functional of a two-qubit state for one Alice with the given sharpness.

    Half the sum, over Bob's basis ``i``, Alice's axis ``j != i`` and both
    outcomes, of outcome probability times Bob's conditional coherence in
    basis ``i``. Bob's conditional state is updated with Alice's effect
    operator.
    """
    s = alice_sharpness if isinstance(alice_sharpness, Sharpness) else Sharpness(alice_sharpness)
    return _naqc_raw(_state(state, 4), CoherenceMeasure(measure), _effect_matrices(s.lam))


def _luders_raw(m: np.ndarray, axis, quality: float) -> np.ndarray:
    return quality * m + (1.0 - quality) * _dephase_a(m, axis)


def chain_states(initial, lambdas: Sequence[float]) -> list[np.ndarray]:
    """States reaching the next Alice, one per predecessor setting chain.

    Chains are enumerated in lexicographic order over (x, y, z); all share
    the uniform weight ``3 ** -len(lambdas)``.
    """
    states = [_state(initial, 4)]
    for lam in lambdas:
        quality = Sharpness(lam).quality
        states = [_luders_raw(m, axis, quality) for m in states for axis in AXES]
    return states


def _average_naqc(states: list[np.ndarray], measure: CoherenceMeasure, lam: float) -> float:
    effects = _effect_matrices(lam)
    return math.fsum(_naqc_raw(m, measure, effects) for m in states) / len(states)


def sequential_naqc(initial, config: ScenarioConfig) -> NaqcResult:
    """Averaged NAQC value between the last Alice of ``config`` and Bob."""
    lambdas = config.lambdas
    states = chain_states(initial, lambdas[:-1])
    value = _average_naqc(states, config.measure, lambdas[-1])
    bound = config.measure.bound
    return NaqcResult(value, bound, value > bound, config)


def chain_contributions(initial, config: ScenarioConfig) -> dict[tuple, float]:
    """Per-chain NAQC values keyed by the predecessor axis tuple."""
    lambdas = config.lambdas
    states = chain_states(initial, lambdas[:-1])
    effects = _effect_matrices(lambdas[-1])
    chains = itertools.product(AXES, repeat=len(lambdas) - 1)
    return {chain: _naqc_raw(m, config.measure, effects) for chain, m in zip(chains, states)}


class AliceSearch(NamedTuple):
    count: int
    witness: tuple[float, ...] | None


def _grid(step: float) -> list[float]:
    n = int(round(1.0 / step))
    return [round(k * step, 12) for k in range(1, n) if k * step < 1.0]


def _boundary(states, measure, bound, lo, hi) -> float:
    """Bisect between an infeasible ``lo`` and a feasible ``hi``."""
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        if _average_naqc(states, measure, mid) > bound:
            hi = mid
        else:
            lo = mid
        if hi - lo < 1e-9:
            break
    return hi


def _candidates(states, measure, bound, grid):
    """Feasible sharpness values for the current Alice, boundary point first."""
    feasible = [lam for lam in grid if _average_naqc(states, measure, lam) > bound]
    if not feasible:
        return []
    first = grid.index(feasible[0])
    if first > 0:
        edge = _boundary(states, measure, bound, grid[first - 1], feasible[0]) + REFINE_OFFSET
        if edge < feasible[0] and _average_naqc(states, measure, edge) > bound:
            feasible.insert(0, edge)
    return feasible


def _search(states, measure, bound, grid, prefix, depth, n, final_sharp):
    if depth == n:
        final = [1.0] if final_sharp else grid + [1.0]
        for lam in final:
            if _average_naqc(states, measure, lam) > bound:
                return prefix + (lam,)
        return None
    for lam in _candidates(states, measure, bound, grid):
        quality = math.sqrt(1.0 - lam * lam)
        nxt = [_luders_raw(m, axis, quality) for m in states for axis in AXES]
        found = _search(nxt, measure, bound, grid, prefix + (lam,), depth + 1, n, final_sharp)
        if found is not None:
            return found
    return None


def search_max_alices(measure: CoherenceMeasure, search_grid_step: float = 0.01,
                      final_sharp: bool = True, initial=None, max_n: int = 6) -> AliceSearch:
    """Largest number of sequential Alices that can all violate their NAQC bound.

    For each ``n`` a depth-first grid search looks for predecessor
    sharpnesses such that every Alice^k (using her own ``lambda_k``) violates
    the bound and the last one does too with ``lambda_n = 1``. The first grid
    point past each feasibility boundary is refined once by bisection.
    """
    if not (0.0 < search_grid_step <= 0.1):
        raise ValueError("search_grid_step must lie in (0, 0.1]")
    measure = CoherenceMeasure(measure)
    start = [_state(singlet() if initial is None else initial, 4)]
    grid = _grid(search_grid_step)
    best = AliceSearch(0, None)
    for n in range(1, max_n + 1):
        witness = _search(start, measure, measure.bound, grid, (), 1, n, final_sharp)
        if witness is None:
            break
        best = AliceSearch(n, witness)
    return best


def max_alices(measure: CoherenceMeasure, search_grid_step: float = 0.01, final_sharp: bool = True) -> int:
    return search_max_alices(measure, search_grid_step, final_sharp).count
