"""Exception hierarchy for the simulator."""


class MilinkError(Exception):
    """Base class for all simulator errors."""


class GeometryError(MilinkError, ValueError):
    """Non-physical or colliding coil geometry."""


class NumericalError(MilinkError, RuntimeError):
    """Singular system, non-convergent quadrature, or inconsistent numerics."""


class SynthesisError(MilinkError, RuntimeError):
    """Matching-network synthesis has no feasible solution."""


class SamplingError(MilinkError, RuntimeError):
    """Random geometry sampling failed (density too high)."""


class ConfigError(MilinkError, ValueError):
    """Invalid configuration file or override."""
