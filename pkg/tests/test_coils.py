"""Coil equivalent-circuit model tests, including the calibration gates."""

import math

import numpy as np
import pytest

from milink.coils import (
    CoilGeometry,
    coil_circuit,
    nagaoka_coefficient,
    ohmic_resistance,
    quality_factor,
    radiation_resistance,
    self_capacitance,
    sensor_solenoid,
    single_turn_loop,
    solenoid_inductance,
    wire_length,
)
from milink.constants import C_LIGHT, MU_0
from milink.errors import GeometryError

F_DESIGN = 750e6


def ext_coil():
    # single-turn loop, 10 cm circumference, 3 mm thick copper wire
    return single_turn_loop([0, 0, 0], [0, 0, 1], 0.1 / (2 * math.pi), 1.5e-3)


# ---------------------------------------------------------------------------
# Calibration against the reference coil parameters
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "size, r_ref, l_ref, q_ref",
    [(150e-6, 0.52, 3e-9, 28.5), (350e-6, 0.48, 7.2e-9, 71.0)],
)
def test_sensor_coil_calibration(size, r_ref, l_ref, q_ref):
    circ = coil_circuit(sensor_solenoid([0, 0, 0], [0, 0, 1], size), F_DESIGN)
    assert circ.ohmic_resistance == pytest.approx(r_ref, rel=0.15)
    assert circ.inductance == pytest.approx(l_ref, rel=0.15)
    assert quality_factor(circ, F_DESIGN) == pytest.approx(q_ref, rel=0.15)


def test_external_coil_q():
    circ = coil_circuit(ext_coil(), F_DESIGN)
    assert quality_factor(circ, F_DESIGN) == pytest.approx(266.0, rel=0.10)


# ---------------------------------------------------------------------------
# Inductance
# ---------------------------------------------------------------------------

def test_nagaoka_reference_value():
    # classic table value for height = diameter
    assert nagaoka_coefficient(1.0) == pytest.approx(0.6884, abs=2e-4)


def test_inductance_scale_invariance():
    g1 = sensor_solenoid([0, 0, 0], [0, 0, 1], 200e-6)
    g2 = sensor_solenoid([0, 0, 0], [0, 0, 1], 400e-6)
    assert solenoid_inductance(g2) == pytest.approx(2 * solenoid_inductance(g1), rel=1e-12)


def test_single_turn_loop_formula():
    g = ext_coil()
    a, rw = g.loop_radius, g.wire_radius
    assert solenoid_inductance(g) == pytest.approx(
        MU_0 * a * (math.log(8 * a / rw) - 2.0), rel=1e-12
    )


def test_nonphysical_geometry_rejected():
    with pytest.raises(GeometryError):
        CoilGeometry(center=[0, 0, 0], axis=[0, 0, 1], turns=1,
                     loop_radius=1e-6, solenoid_height=0.0, wire_radius=2e-6)
    with pytest.raises(GeometryError):
        CoilGeometry(center=[0, 0, 0], axis=[0, 0, 2], turns=1,
                     loop_radius=1e-3, solenoid_height=0.0, wire_radius=1e-4)


# ---------------------------------------------------------------------------
# Ohmic resistance
# ---------------------------------------------------------------------------

def test_dc_limit_uniform_current():
    g = sensor_solenoid([0, 0, 0], [0, 0, 1], 350e-6)
    r_dc = wire_length(g) / (g.material_conductivity * math.pi * g.wire_radius**2)
    assert ohmic_resistance(g, 1e-2) == pytest.approx(r_dc, rel=1e-3)


def test_resistance_monotone_in_frequency():
    g = sensor_solenoid([0, 0, 0], [0, 0, 1], 350e-6)
    freqs = np.logspace(3, 10, 40)
    rs = [ohmic_resistance(g, f) for f in freqs]
    assert all(r2 >= r1 for r1, r2 in zip(rs, rs[1:]))


def test_single_turn_has_no_proximity_penalty():
    g = ext_coil()
    # surface-current regime: R should equal R_dc*(x/2 + 0.25) exactly
    from milink.coils import skin_depth
    r_dc = wire_length(g) / (g.material_conductivity * math.pi * g.wire_radius**2)
    x = g.wire_radius / skin_depth(F_DESIGN, g.material_conductivity)
    assert ohmic_resistance(g, F_DESIGN) == pytest.approx(r_dc * (x / 2 + 0.25), rel=1e-12)


# ---------------------------------------------------------------------------
# Radiation resistance
# ---------------------------------------------------------------------------

def test_radiation_resistance_closed_form_grid():
    # must equal 320*pi^4*(nu*S)^2/lambda^4 to 1e-10 relative on a 100-point grid
    rng = np.random.default_rng(7)
    freqs = rng.uniform(1e8, 2e9, 100)
    turns = rng.integers(1, 8, 100)
    areas = rng.uniform(1e-9, 1e-3, 100)
    for f, nu, s in zip(freqs, turns, areas):
        lam = C_LIGHT / f
        oracle = 320.0 * math.pi**4 * (nu * s) ** 2 / lam**4
        assert radiation_resistance(f, int(nu), s) == pytest.approx(oracle, rel=1e-10)


def test_radiation_resistance_reference_point():
    # nu*S/lambda^2 = 1e-3  ->  approx 31.17 mOhm
    f = 750e6
    lam = C_LIGHT / f
    area = 1e-3 * lam**2
    assert radiation_resistance(f, 1, area) == pytest.approx(31.171e-3, rel=1e-3)


def test_radiation_resistance_zero_area():
    assert radiation_resistance(750e6, 1, 0.0) == 0.0


def test_radiation_resistance_f4_scaling():
    r1 = radiation_resistance(5e8, 3, 1e-6)
    r2 = radiation_resistance(1e9, 3, 1e-6)
    assert r2 == pytest.approx(16 * r1, rel=1e-12)


# ---------------------------------------------------------------------------
# Self-capacitance
# ---------------------------------------------------------------------------

def test_self_capacitance_scales_linearly():
    c1 = self_capacitance(sensor_solenoid([0, 0, 0], [0, 0, 1], 200e-6))
    c2 = self_capacitance(sensor_solenoid([0, 0, 0], [0, 0, 1], 600e-6))
    assert c2 == pytest.approx(3 * c1, rel=1e-12)


def test_self_resonance_above_3ghz():
    circ = coil_circuit(sensor_solenoid([0, 0, 0], [0, 0, 1], 350e-6), F_DESIGN)
    f_res = 1.0 / (2 * math.pi * math.sqrt(circ.inductance * circ.self_capacitance))
    assert f_res > 3e9


def test_self_capacitance_small_correction_at_design_frequency():
    # full one-coil port impedance vs bare series RL: effective Q unchanged
    # to within 0.5% (three significant figures) at 750 MHz
    circ = coil_circuit(sensor_solenoid([0, 0, 0], [0, 0, 1], 350e-6), F_DESIGN)
    z_full = circ.port_impedance()
    z_bare = circ.series_impedance()
    q_full = z_full.imag / z_full.real
    q_bare = z_bare.imag / z_bare.real
    assert abs(q_full / q_bare - 1.0) < 5e-3


def test_loop_stray_capacitance_order_of_magnitude():
    # documented loop model: 0.1 pF per meter of circumference; compare with
    # the solenoid formula extrapolated to a 2-turn coil of equal radius for
    # an order-of-magnitude sanity check
    g = ext_coil()
    c_loop = self_capacitance(g)
    assert c_loop == pytest.approx(0.1e-12 * 0.1, rel=1e-9)
    g2 = CoilGeometry(center=[0, 0, 0], axis=[0, 0, 1], turns=2,
                      loop_radius=g.loop_radius, solenoid_height=4 * g.wire_radius * 1.5,
                      wire_radius=g.wire_radius)
    c_sol = self_capacitance(g2)
    # both models must sit in the stray-capacitance regime of a cm-scale coil
    for c in (c_loop, c_sol):
        assert 1e-15 < c < 1e-11


# ---------------------------------------------------------------------------
# Q factor and determinism
# ---------------------------------------------------------------------------

def test_quality_factor_definition():
    circ = coil_circuit(sensor_solenoid([0, 0, 0], [0, 0, 1], 350e-6), F_DESIGN)
    q = quality_factor(circ, F_DESIGN)
    expect = 2 * math.pi * F_DESIGN * circ.inductance / (
        circ.ohmic_resistance + circ.radiation_resistance)
    assert q == pytest.approx(expect, rel=1e-14)


def test_deterministic_pure_functions():
    g = sensor_solenoid([1e-3, 2e-3, -0.1], [0, 1, 0], 275e-6)
    c1 = coil_circuit(g, 8.1e8)
    c2 = coil_circuit(g, 8.1e8)
    assert c1 == c2
