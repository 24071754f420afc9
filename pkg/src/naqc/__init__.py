"""Sequential sharing of nonlocal advantage of quantum coherence (NAQC)."""

from .coherence import CoherenceMeasure, coherence, complementarity_sum
from .quantum import (
    DensityMatrix,
    Outcome,
    PauliAxis,
    Sharpness,
    conditional_state,
    effect,
    luders_nonselective,
    partial_trace,
    singlet,
)
from .scenario import NaqcResult, ScenarioConfig, max_alices, naqc_value, sequential_naqc

__all__ = [
    "CoherenceMeasure",
    "DensityMatrix",
    "NaqcResult",
    "Outcome",
    "PauliAxis",
    "ScenarioConfig",
    "Sharpness",
    "coherence",
    "complementarity_sum",
    "conditional_state",
    "effect",
    "luders_nonselective",
    "max_alices",
    "naqc_value",
    "partial_trace",
    "sequential_naqc",
    "singlet",
]
