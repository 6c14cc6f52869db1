"""Mutual impedances between coils and antenna-network matrix assembly.

The exact mutual impedance of two thin-wire coils is a double contour
integral with retarded kernel exp(-jkd)/d over both wire curves, evaluated
by adaptive composite Gauss-Legendre quadrature.  A closed-form magnetic
dipole approximation takes over once the coils are separated by a few
diameters.  For frequency sweeps the geometric part of the quadrature is
cached as power moments of the node-distance distribution, so re-evaluating
a pair at a new frequency costs a short Taylor series instead of a fresh
double integral.

The assembled bare matrix (series R-L diagonals plus mutual couplings) is
converted to the antenna impedance matrix by folding in the coil
self-capacitances, and passive relay ports are absorbed by a Schur
complement against their termination loads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .coils import CoilCircuit, CoilGeometry, coil_circuit
from .constants import MU_0, R_OPEN, angular, wavenumber
from .errors import GeometryError, NumericalError

__all__ = [
    "CoilPose",
    "OrientationFactors",
    "mutual_impedance_integral",
    "mutual_impedance_dipole",
    "neumann_mutual_inductance",
    "assemble_antenna_matrix",
    "antenna_matrix_from_parts",
    "reduce_passive_relays",
    "resonance_capacitor",
    "CoupledCoilSet",
]

QUAD_START = 32        # Gauss-Legendre points per turn, initial
QUAD_CAP = 512         # per-turn cap before giving up
QUAD_TOL = 1e-4        # relative change between refinements
DIPOLE_BEYOND = 4.0    # dipole form beyond this many max-coil-diameters
_MOMENT_TERMS = 64     # Taylor terms retained for swept evaluation
_MOMENT_KD_MAX = 9.0   # beyond this electrical size, fall back to direct sums


# ---------------------------------------------------------------------------
# Coil curves
# ---------------------------------------------------------------------------

def _orthonormal_frame(axis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic pair of unit vectors completing `axis` to a frame."""
    helper = np.array([1.0, 0.0, 0.0])
    if abs(axis[0]) > 0.9:
        helper = np.array([0.0, 1.0, 0.0])
    u = np.cross(axis, helper)
    u /= np.linalg.norm(u)
    v = np.cross(axis, u)
    return u, v


@dataclass(frozen=True)
class CoilPose:
    """A coil geometry together with its parametric wire curve.

    The curve is a circle for flat loops and a constant-pitch helix for
    solenoids, parametrized by t in [0, 1] over all turns.
    """

    geometry: CoilGeometry

    def points_and_tangents(self, t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Curve points r(t) and derivatives dr/dt, both (len(t), 3)."""
        g = self.geometry
        u, v = _orthonormal_frame(g.axis)
        phase = 2.0 * math.pi * g.turns * np.asarray(t, float)
        a = g.loop_radius
        pts = (g.center[None, :]
               + a * (np.cos(phase)[:, None] * u + np.sin(phase)[:, None] * v))
        tan = 2.0 * math.pi * g.turns * a * (
            -np.sin(phase)[:, None] * u + np.cos(phase)[:, None] * v)
        height = g.turns * g.pitch
        if height > 0.0:
            pts = pts + ((np.asarray(t, float) - 0.5) * height)[:, None] * g.axis
            tan = tan + height * g.axis[None, :]
        return pts, tan

    def length(self) -> float:
        """Analytic curve length including the helix pitch correction."""
        g = self.geometry
        return g.turns * math.hypot(2.0 * math.pi * g.loop_radius, g.pitch)


@lru_cache(maxsize=32)
def _gauss_panels(n_per_turn: int, turns: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule on [0, 1]: one panel per turn."""
    x, w = np.polynomial.legendre.leggauss(n_per_turn)
    nodes, weights = [], []
    for i in range(turns):
        lo, hi = i / turns, (i + 1) / turns
        nodes.append(0.5 * (hi - lo) * (x + 1.0) + lo)
        weights.append(0.5 * (hi - lo) * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _curve_samples(pose: CoilPose, n_per_turn: int) -> tuple[np.ndarray, np.ndarray]:
    """Quadrature nodes (N,3) and weight-scaled tangents (N,3)."""
    t, w = _gauss_panels(n_per_turn, pose.geometry.turns)
    pts, tan = pose.points_and_tangents(t)
    return pts, tan * w[:, None]


# ---------------------------------------------------------------------------
# Orientation factors and dipole approximation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrientationFactors:
    """Near- and far-field axis-alignment factors of a coil pair."""

    j_nf: float
    j_ff: float
    direction: np.ndarray  # unit vector from coil m to coil n
    distance: float        # center separation [m]

    @classmethod
    def from_coils(cls, m: CoilGeometry, n: CoilGeometry) -> "OrientationFactors":
        delta = n.center - m.center
        d = float(np.linalg.norm(delta))
        if d <= 0.0:
            raise GeometryError("coil centers coincide")
        e = delta / d
        om, on = m.axis, n.axis
        me, ne_ = float(om @ e), float(on @ e)
        j_nf = 1.5 * me * ne_ - 0.5 * float(om @ on)
        j_ff = float(om @ on) - me * ne_
        return cls(j_nf=j_nf, j_ff=j_ff, direction=e, distance=d)


def mutual_impedance_dipole(m: CoilGeometry, n: CoilGeometry, f: float) -> complex:
    """Mutual impedance in the magnetic-dipole approximation [ohm].

    Valid once the center separation exceeds a few diameters of the larger
    coil; includes the reactive near-field and the radiative far-field term.
    """
    fac = OrientationFactors.from_coils(m, n)
    k = wavenumber(f)
    kd = k * fac.distance
    l_bar = (MU_0 / (2.0 * math.pi)) * (m.turns * m.area) * (n.turns * n.area) * k**3
    bracket = (1.0 / kd**3 + 1j / kd**2) * fac.j_nf + fac.j_ff / (2.0 * kd)
    return 1j * angular(f) * l_bar * bracket * np.exp(-1j * kd)


# ---------------------------------------------------------------------------
# Exact double-contour integral
# ---------------------------------------------------------------------------

def _pair_kernel(a: CoilPose, b: CoilPose, n_per_turn: int) -> tuple[np.ndarray, np.ndarray]:
    """Flattened node distances and tangent-dot weights for one coil pair."""
    pa, ta = _curve_samples(a, n_per_turn)
    pb, tb = _curve_samples(b, n_per_turn)
    diff = pa[:, None, :] - pb[None, :, :]
    d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    w = ta @ tb.T
    min_sep = a.geometry.wire_radius + b.geometry.wire_radius
    if d.min() < min_sep:
        raise GeometryError("coil wire curves intersect or touch")
    return d.ravel(), w.ravel()


def _retarded_sum(d: np.ndarray, w: np.ndarray, f: float) -> complex:
    k = wavenumber(f)
    return complex(np.sum(w * np.exp(-1j * k * d) / d))


def _integral_prefactor(f: float) -> complex:
    return 1j * angular(f) * MU_0 / (4.0 * math.pi)


def _check_centers(a: CoilGeometry, b: CoilGeometry) -> float:
    d = float(np.linalg.norm(a.center - b.center))
    if d <= 2.0 * (a.wire_radius + b.wire_radius):
        raise GeometryError("coils intersect (center separation below wire radii)")
    return d


def mutual_impedance_integral(a: CoilPose, b: CoilPose, f: float,
                              tol: float = QUAD_TOL,
                              start: int = QUAD_START,
                              cap: int = QUAD_CAP) -> complex:
    """Mutual impedance by nested quadrature of the retarded kernel [ohm].

    Refines the per-turn Gauss-Legendre order (doubling from `start`) until
    the result changes by less than `tol` relative, then returns the finer
    value.  Reciprocity holds by construction of the symmetric kernel.
    """
    _check_centers(a.geometry, b.geometry)
    n = start
    d, w = _pair_kernel(a, b, n)
    z_prev = _integral_prefactor(f) * _retarded_sum(d, w, f)
    while n < cap:
        n *= 2
        d, w = _pair_kernel(a, b, n)
        z = _integral_prefactor(f) * _retarded_sum(d, w, f)
        if abs(z - z_prev) <= tol * abs(z):
            return z
        z_prev = z
    raise NumericalError(
        f"mutual impedance quadrature did not converge below {tol} at {cap} points/turn")


def neumann_mutual_inductance(a: CoilPose, b: CoilPose,
                              n_per_turn: int = 128) -> float:
    """Magnetoquasistatic mutual inductance (Neumann double integral) [H]."""
    _check_centers(a.geometry, b.geometry)
    d, w = _pair_kernel(a, b, n_per_turn)
    return MU_0 / (4.0 * math.pi) * float(np.sum(w / d))


def _converged_order(a: CoilPose, b: CoilPose, f: float, tol: float,
                     start: int, cap: int) -> int:
    """Per-turn quadrature order accepted by the doubling test at `f`."""
    n = start
    d, w = _pair_kernel(a, b, n)
    z_prev = _retarded_sum(d, w, f)
    while n < cap:
        n *= 2
        d, w = _pair_kernel(a, b, n)
        z = _retarded_sum(d, w, f)
        if abs(z - z_prev) <= tol * abs(z):
            return n
        z_prev = z
    raise NumericalError("mutual impedance quadrature did not converge")


# ---------------------------------------------------------------------------
# Swept-frequency pair evaluation via distance moments
# ---------------------------------------------------------------------------

class _PairEvaluator:
    """Frequency-swept mutual impedance of one coil pair.

    Either a dipole pair (closed form per frequency), or an integral pair
    whose quadrature kernel is reduced to moments S_m = sum(w * d^(m-1)).
    Then   Z(f) = (j*omega*mu/4pi) * sum_m (-jk)^m / m! * S_m,
    a series that converges to machine precision for kd below ~9 because
    the node distances of in-scope coil pairs are electrically short.
    """

    def __init__(self, a: CoilPose, b: CoilPose, f_ref: float, use_dipole: bool,
                 tol: float = QUAD_TOL):
        self.use_dipole = use_dipole
        self._a, self._b = a, b
        if use_dipole:
            return
        order = _converged_order(a, b, f_ref, tol, QUAD_START, QUAD_CAP)
        d, w = _pair_kernel(a, b, order)
        self._kd_max = wavenumber(f_ref) * float(d.max())
        if self._kd_max <= _MOMENT_KD_MAX:
            powers = np.ones_like(d)
            moments = np.empty(_MOMENT_TERMS, dtype=float)
            base = w / d
            for m in range(_MOMENT_TERMS):
                moments[m] = float(np.sum(base * powers))
                powers *= d
            self._moments = moments
            self._d = self._w = None
        else:
            self._moments = None
            self._d, self._w = d, w

    def __call__(self, f: float) -> complex:
        if self.use_dipole:
            return mutual_impedance_dipole(self._a.geometry, self._b.geometry, f)
        if self._moments is None:
            return _integral_prefactor(f) * _retarded_sum(self._d, self._w, f)
        jk = -1j * wavenumber(f)
        term = 1.0 + 0.0j
        acc = 0.0 + 0.0j
        for m in range(_MOMENT_TERMS):
            acc += term * self._moments[m]
            term *= jk / (m + 1)
        return _integral_prefactor(f) * acc


class CoupledCoilSet:
    """All pairwise couplings within a fixed set of coils, ready to sweep.

    Selects integral vs dipole evaluation per pair from the separation rule
    (dipole beyond `use_dipole_beyond` times the larger coil diameter) and
    caches the geometric quadrature data, so the bare impedance matrix can
    be evaluated cheaply at many frequencies.
    """

    def __init__(self, poses: list[CoilPose], f_ref: float,
                 use_dipole_beyond: float = DIPOLE_BEYOND,
                 quad_tol: float = QUAD_TOL):
        self.poses = list(poses)
        n = len(self.poses)
        self._pairs: dict[tuple[int, int], _PairEvaluator] = {}
        for i in range(n):
            gi = self.poses[i].geometry
            for j in range(i + 1, n):
                gj = self.poses[j].geometry
                d = _check_centers(gi, gj)
                threshold = use_dipole_beyond * 2.0 * max(gi.loop_radius, gj.loop_radius)
                self._pairs[(i, j)] = _PairEvaluator(
                    self.poses[i], self.poses[j], f_ref,
                    use_dipole=d > threshold, tol=quad_tol)

    def circuits(self, f: float) -> list[CoilCircuit]:
        return [coil_circuit(p.geometry, f) for p in self.poses]

    def bare_matrix(self, f: float) -> np.ndarray:
        """Series-circuit diagonal plus mutual couplings (no self-capacitance)."""
        n = len(self.poses)
        zbar = np.zeros((n, n), dtype=complex)
        for i, circ in enumerate(self.circuits(f)):
            zbar[i, i] = circ.series_impedance()
        for (i, j), pair in self._pairs.items():
            z = pair(f)
            zbar[i, j] = z
            zbar[j, i] = z
        return zbar

    def antenna_matrix(self, f: float) -> np.ndarray:
        """Impedance matrix between all coil ports, self-capacitances folded in."""
        return antenna_matrix_from_parts(self.circuits(f), self.bare_matrix(f), f)


# ---------------------------------------------------------------------------
# Matrix assembly and relay reduction
# ---------------------------------------------------------------------------

def antenna_matrix_from_parts(circuits: list[CoilCircuit], zbar: np.ndarray,
                              f: float) -> np.ndarray:
    """Fold parallel self-capacitances into the bare impedance matrix."""
    c_self = np.array([c.self_capacitance for c in circuits])
    try:
        y = np.linalg.inv(zbar)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"bare impedance matrix singular (cond={np.linalg.cond(zbar):.3e})") from exc
    y[np.diag_indices_from(y)] += 1j * angular(f) * c_self
    try:
        z_a = np.linalg.inv(y)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"antenna admittance matrix singular (cond={np.linalg.cond(y):.3e})") from exc
    return 0.5 * (z_a + z_a.T)  # symmetrize away float round-off


def assemble_antenna_matrix(coils: list[CoilPose], f: float,
                            use_dipole_beyond: float = DIPOLE_BEYOND) -> np.ndarray:
    """Antenna impedance matrix of a coil set at a single frequency.

    Off-diagonal entries use the exact integral for close pairs and the
    dipole approximation beyond `use_dipole_beyond` times the larger coil
    diameter.  The result is complex symmetric (reciprocal network).
    """
    if not coils:
        raise GeometryError("need at least one coil")
    return CoupledCoilSet(coils, f_ref=f,
                          use_dipole_beyond=use_dipole_beyond).antenna_matrix(f)


def reduce_passive_relays(z_full: np.ndarray, n_active: int,
                          z_term: np.ndarray) -> np.ndarray:
    """Absorb terminated relay ports into the active-port impedance matrix.

    The first `n_active` ports stay; the remaining ports are closed with the
    passive load matrix `z_term` and eliminated by a Schur complement:
    Z = Z_aa - Z_ra^T (Z_rr + Z_term)^-1 Z_ra.
    """
    z_full = np.asarray(z_full, dtype=complex)
    n = z_full.shape[0]
    if z_full.shape != (n, n) or not 0 < n_active <= n:
        raise ValueError("bad partition of the full impedance matrix")
    n_relay = n - n_active
    if n_relay == 0:
        return z_full.copy()
    z_term = np.asarray(z_term, dtype=complex)
    if z_term.shape != (n_relay, n_relay):
        raise ValueError("termination matrix size must match the relay block")
    z_aa = z_full[:n_active, :n_active]
    z_ra = z_full[n_active:, :n_active]
    z_rr = z_full[n_active:, n_active:]
    try:
        x = np.linalg.solve(z_rr + z_term, z_ra)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            "relay block singular (lossless resonance?); "
            f"cond={np.linalg.cond(z_rr + z_term):.3e}") from exc
    return z_aa - z_ra.T @ x


def resonance_capacitor(inductance: float, f: float) -> float:
    """Series capacitance resonating an inductance at f: C = 1/(omega^2 L)."""
    return 1.0 / (angular(f) ** 2 * inductance)


def relay_termination_matrix(capacitances: list[float], f: float) -> np.ndarray:
    """Diagonal impedance matrix of per-relay series capacitors at f.

    A non-positive capacitance entry stands for an open-circuited relay and
    maps to the large finite open resistance.
    """
    z = []
    w = angular(f)
    for c in capacitances:
        z.append(R_OPEN if c <= 0.0 else 1.0 / (1j * w * c))
    return np.diag(np.asarray(z, dtype=complex))
