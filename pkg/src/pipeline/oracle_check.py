"""``oracle-check``: exact diagonalization against the free-fermion solver.

Every (N, γ, λ) point is solved both ways; the table keeps the largest absolute
deviation per quantity together with the point where it occurred.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from src.entanglement import EntanglementError, assemble_rdm, concurrence
from src.fermions import CorrelatorSet, correlators, ground_energy
from src.model import Axis, FiniteOdd, Infinite, ModelParams
from src.oracle import (
    MAX_ORACLE_SIZE,
    OracleError,
    OracleErrorKind,
    build_hamiltonian,
    correlator,
    ground_state,
    magnetization_site,
    reduced_density_matrix,
)

from .sweep import sweep_grid
from .types import ProgressCallback, ProgressStatus, RunConfig, Stage, Table, emit

logger = logging.getLogger(__name__)

TOLERANCE = 1e-8
MAX_CHECK_R = 3
QUANTITIES = ("energy", "mz", "gxx", "gyy", "gzz", "rho", "C")
PERTURBABLE = ("mz", "gxx", "gyy", "gzz")


@dataclass(frozen=True)
class Deviation:
    quantity: str
    value: float
    params: ModelParams | None = None
    r: int | None = None

    @property
    def passed(self) -> bool:
        return self.value < TOLERANCE


@dataclass(frozen=True, eq=False)
class OracleCheckResult:
    table: Table
    deviations: tuple[Deviation, ...]

    @property
    def passed(self) -> bool:
        return all(item.passed for item in self.deviations)

    @property
    def worst(self) -> Deviation:
        return _worst(self.deviations)


def _worst(deviations: tuple[Deviation, ...] | list[Deviation]) -> Deviation:
    """First failing quantity in solver order, else the largest deviation overall."""
    for item in deviations:
        if not item.passed:
            return item
    return max(deviations, key=lambda item: item.value)


def _check_size(size: object) -> int:
    if isinstance(size, Infinite):
        raise OracleError(OracleErrorKind.NOT_FINITE, "oracle-check needs finite sizes, got inf")
    n = size.n  # type: ignore[union-attr]
    if n > MAX_ORACLE_SIZE:
        raise OracleError(
            OracleErrorKind.SIZE_TOO_LARGE,
            f"N={n} exceeds the oracle limit of {MAX_ORACLE_SIZE} sites",
        )
    return n


def _perturb(corr: CorrelatorSet, flip_sign: str | None) -> CorrelatorSet:
    """Flip the sign of one solver quantity; used to prove the check can fail."""
    if flip_sign is None:
        return corr
    if flip_sign == "mz":
        return replace(corr, mz=-corr.mz)
    flipped = {r: -value for r, value in getattr(corr, flip_sign).items()}
    return replace(corr, **{flip_sign: flipped})


def compare_point(params: ModelParams, flip_sign: str | None = None) -> dict[str, tuple[float, int | None]]:
    """Largest deviation per quantity at one point, with the separation it occurred at."""
    n = int(params.n)  # type: ignore[arg-type]
    r_max = min(MAX_CHECK_R, (n - 1) // 2)
    state = ground_state(build_hamiltonian(params))
    corr = _perturb(correlators(params, r_max), flip_sign)

    found: dict[str, tuple[float, int | None]] = {
        "energy": (abs(state.energy - ground_energy(params)), None),
        "mz": (abs(magnetization_site(state, 1) - corr.mz), None),
    }

    def keep(quantity: str, value: float, r: int) -> None:
        if quantity not in found or value > found[quantity][0]:
            found[quantity] = (value, r)

    for r in range(1, r_max + 1):
        keep("gxx", abs(correlator(state, Axis.X, 1, 1 + r) - corr.gxx[r]), r)
        keep("gyy", abs(correlator(state, Axis.Y, 1, 1 + r) - corr.gyy[r]), r)
        keep("gzz", abs(correlator(state, Axis.Z, 1, 1 + r) - corr.gzz[r]), r)
        exact = reduced_density_matrix(state, 1, 1 + r)
        try:
            solved = assemble_rdm(corr, r)
        except EntanglementError as exc:
            logger.info("N=%d gamma=%g lambda=%g r=%d: %s", n, params.gamma, params.lam, r, exc)
            keep("rho", math.inf, r)
            keep("C", math.inf, r)
            continue
        keep("rho", float(np.max(np.abs(exact.rho - solved.rho))), r)
        keep("C", abs(concurrence(exact) - concurrence(solved)), r)
    return found


def run_oracle_check(
    config: RunConfig,
    *,
    flip_sign: str | None = None,
    on_progress: ProgressCallback | None = None,
) -> OracleCheckResult:
    if flip_sign is not None and flip_sign not in PERTURBABLE:
        raise ValueError(f"flip_sign must be one of {PERTURBABLE}, got {flip_sign!r}")
    sizes = sorted({_check_size(size) for size in config.sizes or ()})
    if not sizes:
        raise OracleError(OracleErrorKind.SIZE_TOO_LARGE, "oracle-check needs at least one size")
    points = [
        ModelParams(size=FiniteOdd(n), gamma=gamma, lam=float(lam))
        for gamma in sorted(set(config.gammas))
        for n in sizes
        for lam in sweep_grid(config)
    ]
    emit(on_progress, Stage.COMPARE, ProgressStatus.STARTED, f"{len(points)} points")
    try:
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            results = list(pool.map(lambda p: compare_point(p, flip_sign), points))
    except Exception as exc:
        emit(on_progress, Stage.COMPARE, ProgressStatus.FAILED, str(exc))
        raise

    deviations: list[Deviation] = []
    for quantity in QUANTITIES:
        best = Deviation(quantity=quantity, value=-1.0)
        for params, found in zip(points, results):
            if quantity in found and found[quantity][0] > best.value:
                best = Deviation(quantity, found[quantity][0], params, found[quantity][1])
        deviations.append(best)

    rows = [
        (
            item.quantity,
            item.value,
            item.params.size if item.params else "",
            item.params.gamma if item.params else "",
            item.params.lam if item.params else "",
            "" if item.r is None else item.r,
            "PASS" if item.passed else "FAIL",
        )
        for item in deviations
    ]
    passed = all(item.passed for item in deviations)
    summary = {
        "result": "PASS" if passed else "FAIL",
        "tolerance": TOLERANCE,
        "points": len(points),
        "max_deviation": max(item.value for item in deviations),
        "worst": describe(_worst(deviations)),
    }
    result = OracleCheckResult(
        table=Table(
            columns=("quantity", "max_deviation", "N", "gamma", "lambda", "r", "status"),
            rows=rows,
            summary=summary,
        ),
        deviations=tuple(deviations),
    )
    status = ProgressStatus.FINISHED if result.passed else ProgressStatus.FAILED
    emit(on_progress, Stage.COMPARE, status, summary["worst"])
    return result


def describe(item: Deviation) -> str:
    if item.params is None:
        return f"quantity={item.quantity} deviation={item.value:.3e}"
    where = f"N={item.params.n} gamma={item.params.gamma:g} lambda={item.params.lam:g}"
    if item.r is not None:
        where += f" r={item.r}"
    return f"{where} quantity={item.quantity} deviation={item.value:.3e}"
