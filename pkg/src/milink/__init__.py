"""milink: magneto-inductive MIMO link simulator.

Models networks of electrically small coils (external array, micro-scale
sensor nodes, passive resonant relays) for wireless power transfer and
data uplink: coil equivalent circuits, exact and dipole mutual impedances,
multiport matching chains, power-consistent MIMO channels with correlated
noise, and link-level rate evaluation.
"""

__version__ = "0.1.0"

from .coils import CoilCircuit, CoilGeometry, coil_circuit, quality_factor  # noqa: F401
from .errors import (  # noqa: F401
    ConfigError,
    GeometryError,
    MilinkError,
    NumericalError,
    SamplingError,
    SynthesisError,
)
