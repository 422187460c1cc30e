"""Two-site reduced density matrices built from correlators."""

from __future__ import annotations

import numpy as np

from src.fermions import CorrelatorSet

from .types import EntanglementError, EntanglementErrorKind, TwoSiteState

POSITIVITY_TOLERANCE = 1e-8

# σy⊗σy in the fixed basis; real, symmetric and its own inverse.
SPIN_FLIP = np.array(
    [[0.0, 0.0, 0.0, -1.0], [0.0, 0.0, 1.0, 0.0], [0.0, 1.0, 0.0, 0.0], [-1.0, 0.0, 0.0, 0.0]]
)

# Entries allowed to be nonzero by reality, parity and translation invariance.
_STRUCTURE_MASK = np.array(
    [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]], dtype=bool
)


def assemble_rdm(corr: CorrelatorSet, r: int) -> TwoSiteState:
    """ρ(i, i+r) from ⟨σᶻ⟩ and the three diagonal two-point functions."""
    mz = corr.mz
    gxx, gyy, gzz = corr.gxx[r], corr.gyy[r], corr.gzz[r]
    rho = np.zeros((4, 4))
    rho[0, 0] = (1.0 + 2.0 * mz + gzz) / 4.0
    rho[3, 3] = (1.0 - 2.0 * mz + gzz) / 4.0
    rho[1, 1] = rho[2, 2] = (1.0 - gzz) / 4.0
    rho[1, 2] = rho[2, 1] = (gxx + gyy) / 4.0
    rho[0, 3] = rho[3, 0] = (gxx - gyy) / 4.0

    lowest = float(np.linalg.eigvalsh(rho)[0])
    if lowest < -POSITIVITY_TOLERANCE:
        raise EntanglementError(
            EntanglementErrorKind.NOT_POSITIVE,
            f"r={r}: density matrix eigenvalue {lowest:.3e} is negative "
            f"(mz={mz:.6g}, gxx={gxx:.6g}, gyy={gyy:.6g}, gzz={gzz:.6g})",
        )
    return TwoSiteState(rho=rho)


def spin_flip(state: TwoSiteState) -> np.ndarray:
    """ρ̃ = (σy⊗σy) ρ* (σy⊗σy); ρ is real so ρ* = ρ."""
    return SPIN_FLIP @ np.conj(state.rho).real @ SPIN_FLIP


def check_structure(state: TwoSiteState, *, tol: float = 1e-10) -> None:
    """Raise unless ``state`` has unit trace, symmetry, positivity and the X pattern."""
    rho = state.rho
    problems: list[str] = []
    if rho.shape != (4, 4):
        problems.append(f"shape {rho.shape}")
    else:
        if abs(np.trace(rho) - 1.0) > 1e-12:
            problems.append(f"trace {np.trace(rho):.15g}")
        if np.max(np.abs(rho - rho.T)) > 1e-12:
            problems.append("not symmetric")
        if float(np.linalg.eigvalsh(rho)[0]) < -tol:
            problems.append("negative eigenvalue")
        if np.max(np.abs(rho[~_STRUCTURE_MASK]), initial=0.0) > tol:
            problems.append("entries outside the parity pattern")
        if abs(rho[1, 1] - rho[2, 2]) > tol:
            problems.append("rho22 != rho33")
    if problems:
        raise EntanglementError(
            EntanglementErrorKind.STRUCTURE_VIOLATION,
            "invalid two-site state: " + ", ".join(problems),
        )
