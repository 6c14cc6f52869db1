"""Physical constants used throughout the simulator.

Free space is idealized with mu_0 = 4*pi*1e-7 H/m and c = 3e8 m/s, so the
wave impedance is exactly eta_0 = mu_0 * c = 120*pi ohms.  With this
convention the small-loop radiation resistance identity
(1/3)*mu*k^3*f*(nu*S)^2 == 320*pi^4*(nu*S)^2/lambda^4 holds to machine
precision.  The 0.07% difference to the CODATA speed of light is far below
every model tolerance in this package.
"""

import math

MU_0 = 4.0 * math.pi * 1e-7      # vacuum permeability [H/m]
C_LIGHT = 3.0e8                  # speed of light, idealized [m/s]
EPS_0 = 1.0 / (MU_0 * C_LIGHT**2)  # vacuum permittivity [F/m]
ETA_0 = MU_0 * C_LIGHT           # free-space wave impedance = 120*pi [ohm]
K_BOLTZMANN = 1.380649e-23       # Boltzmann constant [J/K]

COPPER_CONDUCTIVITY = 5.8e7      # annealed copper [S/m]

# Large-but-finite resistance standing in for an open circuit.  Keeping a
# single regular code path is worth the ~1e-10 relative error it introduces.
R_OPEN = 1.0e12                  # [ohm]


def wavenumber(f: float) -> float:
    """Free-space wavenumber k = 2*pi*f/c [rad/m]."""
    return 2.0 * math.pi * f / C_LIGHT


def angular(f: float) -> float:
    """Angular frequency omega = 2*pi*f [rad/s]."""
    return 2.0 * math.pi * f
