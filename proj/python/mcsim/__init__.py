"""Multi-scale stochastic diffusion simulator for molecular communication."""

from ._mcsim import (
    ConfigError,
    GeometryError,
    expected_rx,
    reflect,
    run,
    sample_event_time,
    scenarios,
    transition_rate,
    validate,
)

__all__ = [
    "ConfigError",
    "GeometryError",
    "expected_rx",
    "reflect",
    "run",
    "sample_event_time",
    "scenarios",
    "transition_rate",
    "validate",
]
