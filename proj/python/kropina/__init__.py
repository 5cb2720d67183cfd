"""Kropina surfaces of revolution: metrics, curvature, minimality and geodesics."""

from ._core import (
    ConeMetric,
    ConfigError,
    DegenerateError,
    DomainError,
    Error,
    OneForm,
    Profile,
    Surface,
    __version__,
    ambient_eval,
    bisect_minimal_slope,
    config_keys,
    integrate,
    run_command,
)

__all__ = [
    "ConeMetric",
    "ConfigError",
    "DegenerateError",
    "DomainError",
    "Error",
    "OneForm",
    "Profile",
    "Surface",
    "__version__",
    "ambient_eval",
    "bisect_minimal_slope",
    "config_keys",
    "integrate",
    "run_command",
]
