"""Critical-scaling analysis of concurrence derivatives."""

from .analysis import (
    c2_analysis,
    concurrence_peak,
    critical_grid,
    derivative_family,
    infinite_log_slope,
    maxima_decreasing,
    report_from_curves,
    scaling_report,
)
from .collapse import DEFAULT_LAMBDA_0, DEFAULT_X_WINDOW, collapse, fit_nu
from .derivative import (
    DEFAULT_STEP,
    derivative,
    derivative_on_grid,
    effective_step,
    find_minimum,
    locate_minimum,
    point_derivative,
)
from .fits import fit_log, fit_loglog, fit_power, prefactor_ratio_nu
from .types import (
    C2Report,
    CollapseResult,
    DerivativeCurve,
    Extremum,
    LogFit,
    NuFit,
    PowerFit,
    ScalingError,
    ScalingErrorKind,
    ScalingReport,
)

__all__ = [
    "C2Report",
    "CollapseResult",
    "DEFAULT_LAMBDA_0",
    "DEFAULT_STEP",
    "DEFAULT_X_WINDOW",
    "DerivativeCurve",
    "Extremum",
    "LogFit",
    "NuFit",
    "PowerFit",
    "ScalingError",
    "ScalingErrorKind",
    "ScalingReport",
    "c2_analysis",
    "collapse",
    "concurrence_peak",
    "critical_grid",
    "derivative",
    "derivative_family",
    "derivative_on_grid",
    "effective_step",
    "find_minimum",
    "fit_log",
    "fit_loglog",
    "fit_nu",
    "fit_power",
    "infinite_log_slope",
    "locate_minimum",
    "maxima_decreasing",
    "point_derivative",
    "prefactor_ratio_nu",
    "report_from_curves",
    "scaling_report",
]
