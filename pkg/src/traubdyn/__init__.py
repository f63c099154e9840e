"""Damped Newton-composition iterations for polynomials as dynamical systems.

The step T(z) = N(z) - delta * p(N(z)) / p'(z), where N is the Newton step of
the polynomial p, interpolates between Newton's method (delta = 0) and the
two-step composition method (delta = 1). This package provides the polynomial
and rational-map algebra behind the family, fixed-point and critical-point
analysis, basin-of-attraction rendering with topology probes, damping-parameter
planes, a numerical verification suite, and a deterministic CLI.
"""

from .basins import (
    BasinRaster,
    ComponentMask,
    IterSettings,
    OrbitOutcome,
    PlaneSpec,
    classify_orbit,
    hole_count,
    immediate_basin,
    largest_hole,
    raster_stats,
    render_dynamical_plane,
    unbounded_probe,
)
from .maps import (
    CriticalSet,
    FixedPointClass,
    HypothesisViolated,
    Indeterminate,
    TraubMap,
    gdelta_critical_points,
    gdelta_eval,
    gdelta_map,
)
from .paramplane import (
    ParamOutcome,
    ParamRaster,
    classify_parameter_cubic,
    classify_parameter_quadratic,
    cubic_critical_points,
    render_param_plane,
)
from .poly import NonConvergence, Polynomial, RationalMap, cluster_roots, poly_roots, rational_compose
from .ppm import colorize_basin, colorize_param, read_ppm, write_ppm
from .sphere import INF, chordal, chordal_array, is_inf
from .verify import CheckReport, check_figure, run_all

__version__ = "0.1.0"

__all__ = [
    "BasinRaster",
    "CheckReport",
    "ComponentMask",
    "CriticalSet",
    "FixedPointClass",
    "HypothesisViolated",
    "INF",
    "Indeterminate",
    "IterSettings",
    "NonConvergence",
    "OrbitOutcome",
    "ParamOutcome",
    "ParamRaster",
    "PlaneSpec",
    "Polynomial",
    "RationalMap",
    "TraubMap",
    "check_figure",
    "chordal",
    "chordal_array",
    "classify_orbit",
    "classify_parameter_cubic",
    "classify_parameter_quadratic",
    "cluster_roots",
    "colorize_basin",
    "colorize_param",
    "cubic_critical_points",
    "gdelta_critical_points",
    "gdelta_eval",
    "gdelta_map",
    "hole_count",
    "immediate_basin",
    "largest_hole",
    "is_inf",
    "poly_roots",
    "raster_stats",
    "rational_compose",
    "read_ppm",
    "render_dynamical_plane",
    "render_param_plane",
    "run_all",
    "unbounded_probe",
    "write_ppm",
]
