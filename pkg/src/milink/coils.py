"""Equivalent-circuit parameters of single-turn loops and multi-turn solenoids.

A coil is described by its geometry; from geometry and frequency we derive
the series equivalent circuit: self-inductance L, ohmic resistance R_ohm(f)
(skin and proximity effects), radiation resistance R_rad(f), and a parallel
self-capacitance C_self.  All functions are pure and thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ellipe, ellipk

from .constants import COPPER_CONDUCTIVITY, EPS_0, MU_0, wavenumber
from .errors import GeometryError

__all__ = [
    "CoilGeometry",
    "CoilCircuit",
    "single_turn_loop",
    "sensor_solenoid",
    "solenoid_inductance",
    "ohmic_resistance",
    "radiation_resistance",
    "self_capacitance",
    "quality_factor",
    "coil_circuit",
    "wire_length",
    "nagaoka_coefficient",
]


# ---------------------------------------------------------------------------
# Geometry
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoilGeometry:
    """Physical description of one coil (flat loop or single-layer solenoid).

    Attributes
    ----------
    center : ndarray (3,)
        Coil center position [m].
    axis : ndarray (3,)
        Unit vector along the coil axis.
    turns : int
        Number of turns (1 for a flat loop).
    loop_radius : float
        Radius of the circular current path [m]; for solenoids this is the
        winding radius measured to the wire centers.
    solenoid_height : float
        Axial extent of the winding [m]; 0 for a flat single-turn loop.
        Derived from turns and pitch, reported rather than free.
    wire_radius : float
        Conductor radius [m].
    turn_spacing_factor : float
        Center-to-center turn pitch in wire diameters (>= 1).
    material_conductivity : float
        Conductor conductivity [S/m].
    """

    center: np.ndarray
    axis: np.ndarray
    turns: int
    loop_radius: float
    solenoid_height: float
    wire_radius: float
    turn_spacing_factor: float = 1.5
    material_conductivity: float = COPPER_CONDUCTIVITY

    def __post_init__(self):
        center = np.asarray(self.center, dtype=float).reshape(3)
        axis = np.asarray(self.axis, dtype=float).reshape(3)
        object.__setattr__(self, "center", center)
        object.__setattr__(self, "axis", axis)
        if abs(np.linalg.norm(axis) - 1.0) > 1e-12:
            raise GeometryError("coil axis must be a unit vector")
        if self.turns < 1 or int(self.turns) != self.turns:
            raise GeometryError("turns must be a positive integer")
        if self.wire_radius <= 0.0:
            raise GeometryError("wire_radius must be positive")
        if self.loop_radius <= self.wire_radius:
            raise GeometryError("loop_radius must exceed wire_radius")
        if self.turn_spacing_factor < 1.0:
            raise GeometryError("turn pitch below one wire diameter (wires overlap)")
        if self.material_conductivity <= 0.0:
            raise GeometryError("material_conductivity must be positive")

    @property
    def pitch(self) -> float:
        """Axial center-to-center turn spacing [m] (0 for a flat loop)."""
        if self.turns == 1 and self.solenoid_height == 0.0:
            return 0.0
        return self.turn_spacing_factor * 2.0 * self.wire_radius

    @property
    def area(self) -> float:
        """Equivalent magnetic area of one turn, S = pi * loop_radius^2 [m^2]."""
        return math.pi * self.loop_radius**2


def single_turn_loop(center, axis, loop_radius: float, wire_radius: float,
                     conductivity: float = COPPER_CONDUCTIVITY) -> CoilGeometry:
    """Flat circular loop with the given wire-center radius."""
    return CoilGeometry(center=np.asarray(center, float), axis=np.asarray(axis, float),
                        turns=1, loop_radius=loop_radius, solenoid_height=0.0,
                        wire_radius=wire_radius, material_conductivity=conductivity)


def sensor_solenoid(center, axis, size: float, turns: int = 5,
                    turn_spacing_factor: float = 1.5,
                    conductivity: float = COPPER_CONDUCTIVITY) -> CoilGeometry:
    """Micro-sensor solenoid whose height equals its body diameter (``size``).

    The wire is wound around a cylindrical body of diameter ``size``, so the
    current path sits at ``size/2 + wire_radius``.  The wire diameter follows
    from packing ``turns`` turns at the given pitch factor into the height:
    2*r_w = size / (turns * turn_spacing_factor).
    """
    if size <= 0.0:
        raise GeometryError("coil size must be positive")
    wire_radius = size / (2.0 * turns * turn_spacing_factor)
    return CoilGeometry(center=np.asarray(center, float), axis=np.asarray(axis, float),
                        turns=turns, loop_radius=size / 2.0 + wire_radius,
                        solenoid_height=size, wire_radius=wire_radius,
                        turn_spacing_factor=turn_spacing_factor,
                        material_conductivity=conductivity)


def wire_length(geom: CoilGeometry) -> float:
    """Total conductor length, including the helix pitch correction [m]."""
    circumference = 2.0 * math.pi * geom.loop_radius
    if geom.turns == 1 and geom.solenoid_height == 0.0:
        return circumference
    return geom.turns * math.hypot(circumference, geom.pitch)


# ---------------------------------------------------------------------------
# Inductance
# ---------------------------------------------------------------------------

def nagaoka_coefficient(shape: float) -> float:
    """Nagaoka field-nonuniformity coefficient for a current-sheet solenoid.

    Parameters
    ----------
    shape : float
        Length-to-diameter ratio h / (2a) of the winding (> 0).

    Exact Lorenz expression in terms of complete elliptic integrals with
    parameter m = 4a^2 / (4a^2 + h^2).
    """
    m = 1.0 / (1.0 + shape * shape)
    km, em = ellipk(m), ellipe(m)
    return (4.0 / (3.0 * math.pi * math.sqrt(m))) * (
        ((1.0 - m) / m) * (km - em) + em - math.sqrt(1.0 - m)
    )


# Round-wire self-inductance correction for turn count (Rosa/NBS table);
# interpolated linearly, asymptote 0.336 for very many turns.
_ROSA_B = {1: 0.0000, 2: 0.1137, 3: 0.1663, 4: 0.1973, 5: 0.2180,
           6: 0.2329, 7: 0.2443, 8: 0.2532, 9: 0.2604, 10: 0.2664}


def _rosa_b(turns: int) -> float:
    if turns in _ROSA_B:
        return _ROSA_B[turns]
    # large-turn fit, consistent with the table beyond nu = 10
    return 0.336 * (1.0 - 2.5 / turns + 3.8 / turns**2)


def solenoid_inductance(geom: CoilGeometry) -> float:
    """Self-inductance of the coil [H].

    Single-layer solenoids use the Lorenz current-sheet formula
    L = mu_0 * pi * a^2 * nu^2 * k_L / h with the exact Nagaoka coefficient,
    minus the Rosa round-wire corrections mu_0 * a * nu * (A + B) where
    A = ln(1.73 * d_wire / pitch) and B is the tabulated turn-count term.
    A flat single-turn loop falls back to L = mu_0 * a * (ln(8a/r_w) - 2).
    """
    a = geom.loop_radius
    if geom.turns == 1 and geom.solenoid_height == 0.0:
        return MU_0 * a * (math.log(8.0 * a / geom.wire_radius) - 2.0)
    h = geom.turns * geom.pitch
    l_sheet = MU_0 * math.pi * a**2 * geom.turns**2 \
        * nagaoka_coefficient(h / (2.0 * a)) / h
    corr_a = math.log(1.73 * (2.0 * geom.wire_radius) / geom.pitch)
    l_corr = MU_0 * a * geom.turns * (corr_a + _rosa_b(geom.turns))
    return l_sheet - l_corr


# ---------------------------------------------------------------------------
# Ohmic resistance (skin + proximity)
# ---------------------------------------------------------------------------

# Asymptotic proximity-effect resistance ratio for a many-turn winding versus
# pitch/wire-diameter.  Values follow the classic multiturn-loop proximity
# curves; the finite-turn multiplier is 1 + gamma * (1 - 1/nu).
_PROXIMITY_SPACING = np.array([1.0, 1.25, 1.5, 2.0, 3.0, 5.0, 10.0])
_PROXIMITY_GAMMA = np.array([1.30, 0.90, 0.64, 0.35, 0.16, 0.06, 0.01])


def _proximity_multiplier(spacing_factor: float, turns: int) -> float:
    if turns == 1:
        return 1.0
    s = min(max(spacing_factor, _PROXIMITY_SPACING[0]), _PROXIMITY_SPACING[-1])
    gamma = float(np.interp(math.log(s), np.log(_PROXIMITY_SPACING), _PROXIMITY_GAMMA))
    return 1.0 + gamma * (1.0 - 1.0 / turns)


def skin_depth(f: float, conductivity: float) -> float:
    """Skin depth in a good conductor [m]."""
    return 1.0 / math.sqrt(math.pi * f * MU_0 * conductivity)


def ohmic_resistance(geom: CoilGeometry, f: float) -> float:
    """Series ohmic resistance at frequency f [ohm].

    Surface-current skin model R_ac = R_dc * (r_w/(2*delta) + 0.25) once
    r_w/delta > 4, blending linearly to R_dc below; multiplied by a proximity
    factor from the turn-spacing table that likewise fades out toward DC.
    """
    if f <= 0.0:
        raise GeometryError("frequency must be positive")
    r_dc = wire_length(geom) / (geom.material_conductivity * math.pi * geom.wire_radius**2)
    x = geom.wire_radius / skin_depth(f, geom.material_conductivity)
    if x > 4.0:
        skin = 0.5 * x + 0.25
    else:
        skin = 1.0 + (1.25 / 4.0) * x  # continuous at x = 4 (value 2.25)
    prox = _proximity_multiplier(geom.turn_spacing_factor, geom.turns)
    return r_dc * skin * (1.0 + (prox - 1.0) * min(1.0, x / 4.0))


# ---------------------------------------------------------------------------
# Radiation resistance and self-capacitance
# ---------------------------------------------------------------------------

def radiation_resistance(f: float, turns: int, area: float) -> float:
    """Small-loop radiation resistance (1/3) * mu * k^3 * f * nu^2 * S^2 [ohm]."""
    if f <= 0.0:
        raise GeometryError("frequency must be positive")
    if area < 0.0:
        raise GeometryError("area must be non-negative")
    k = wavenumber(f)
    return MU_0 * k**3 * f * (turns * area) ** 2 / 3.0


# Stray capacitance of a single-turn loop, per meter of circumference.
_LOOP_STRAY_CAP_PER_M = 0.1e-12  # [F/m]


def self_capacitance(geom: CoilGeometry) -> float:
    """Parallel self-capacitance of the coil [F].

    Solenoids use the empirical isolated-coil fit
    C = (4*eps0*h/pi) * (1 + 0.8249*(D/h) + 2.329*(D/h)^1.5)
    with winding diameter D and height h.  Single-turn loops get a fixed
    stray capacitance of 0.1 pF per meter of circumference; well below the
    operating band this choice is inconsequential (tested).
    """
    if geom.turns == 1 and geom.solenoid_height == 0.0:
        return _LOOP_STRAY_CAP_PER_M * 2.0 * math.pi * geom.loop_radius
    d_over_h = (2.0 * geom.loop_radius) / geom.solenoid_height
    return (4.0 * EPS_0 * geom.solenoid_height / math.pi) * (
        1.0 + 0.8249 * d_over_h + 2.329 * d_over_h**1.5
    )


# ---------------------------------------------------------------------------
# Equivalent circuit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoilCircuit:
    """Series R-L circuit values with a parallel self-capacitance, at one f."""

    inductance: float          # [H]
    ohmic_resistance: float    # [ohm] at `frequency`
    radiation_resistance: float  # [ohm] at `frequency`
    self_capacitance: float    # [F]
    frequency: float           # [Hz]

    def series_impedance(self) -> complex:
        """R_ohm + R_rad + j*omega*L at the evaluation frequency."""
        w = 2.0 * math.pi * self.frequency
        return self.ohmic_resistance + self.radiation_resistance + 1j * w * self.inductance

    def port_impedance(self) -> complex:
        """Series branch in parallel with the self-capacitance."""
        w = 2.0 * math.pi * self.frequency
        return 1.0 / (1.0 / self.series_impedance() + 1j * w * self.self_capacitance)


def coil_circuit(geom: CoilGeometry, f: float) -> CoilCircuit:
    """Evaluate the full equivalent circuit of a coil at frequency f."""
    return CoilCircuit(
        inductance=solenoid_inductance(geom),
        ohmic_resistance=ohmic_resistance(geom, f),
        radiation_resistance=radiation_resistance(f, geom.turns, geom.area),
        self_capacitance=self_capacitance(geom),
        frequency=f,
    )


def quality_factor(circ: CoilCircuit, f: float) -> float:
    """Q = 2*pi*f*L / (R_ohm + R_rad) using the circuit's resistances."""
    if f <= 0.0:
        raise GeometryError("frequency must be positive")
    return 2.0 * math.pi * f * circ.inductance / (
        circ.ohmic_resistance + circ.radiation_resistance
    )
