"""Two-site density matrices, concurrence and its range along the chain."""

from .concurrence import concurrence, x_state_concurrence
from .density import SPIN_FLIP, assemble_rdm, check_structure, spin_flip
from .profile import (
    RANGE_THRESHOLD,
    concurrence_at,
    concurrence_profile,
    concurrences_at,
    entanglement_range,
    range_from_curve,
    range_profile,
    total_concurrence,
)
from .types import (
    BASIS_LABELS,
    ConcurrenceCurve,
    ConcurrenceMethod,
    EntanglementError,
    EntanglementErrorKind,
    TwoSiteState,
)

__all__ = [
    "BASIS_LABELS",
    "ConcurrenceCurve",
    "ConcurrenceMethod",
    "EntanglementError",
    "EntanglementErrorKind",
    "RANGE_THRESHOLD",
    "SPIN_FLIP",
    "TwoSiteState",
    "assemble_rdm",
    "check_structure",
    "concurrence",
    "concurrence_at",
    "concurrence_profile",
    "concurrences_at",
    "entanglement_range",
    "range_from_curve",
    "range_profile",
    "spin_flip",
    "total_concurrence",
    "x_state_concurrence",
]
