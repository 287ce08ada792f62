import cmath
import math

import numpy as np
import pytest

from gamowlab.errors import PoleProximityError, ValidationError
from gamowlab.momentum import MomentumPoint, Sheet, SheetedEnergy, momentum_of
from gamowlab.rational import laurent_coefficient, poles_of
from gamowlab.smatrix import ResonancePole, SMatrixModel

from oracles import circle_laurent

NARROW = ResonancePole(1 - 0.05j)


def energy_circle_laurent(model, z_c, n, radius=1e-3, points=64):
    """Energy-plane circle contour around z_c on sheet II."""
    def s_of_energy(z):
        w = momentum_of(SheetedEnergy(z, Sheet.II)).w
        return complex(model.s_values(w))
    return circle_laurent(s_of_energy, z_c, n, radius=radius, points=points)


class TestResonancePole:
    def test_derived_quantities(self):
        assert NARROW.z_R == pytest.approx(0.9975 - 0.1j)
        assert NARROW.E_R == pytest.approx(0.9975)
        assert NARROW.gamma == pytest.approx(0.2)

    def test_quadrant_enforced(self):
        for bad in (1 + 0.05j, -1 - 0.05j, 1.0 + 0j, 0.5j):
            with pytest.raises(ValidationError):
                ResonancePole(bad)

    def test_order_bounds(self):
        ResonancePole(1 - 0.05j, order=4)
        with pytest.raises(ValidationError):
            ResonancePole(1 - 0.05j, order=5)
        with pytest.raises(ValidationError):
            ResonancePole(1 - 0.05j, order=0)


class TestSMatrixModel:
    def test_empty_model_is_unity(self):
        m = SMatrixModel()
        assert m.s_value(MomentumPoint(1.23)) == 1.0
        assert m.phase_shift(2.0) == 0.0

    def test_unimodular_on_real_axis(self):
        m = SMatrixModel([NARROW, ResonancePole(2 - 0.2j, order=2)])
        w = np.linspace(1e-3, 5.0, 200)
        assert np.max(np.abs(np.abs(m.s_values(w)) - 1.0)) <= 1e-12

    def test_mirror_symmetry(self):
        rng = np.random.RandomState(9)
        m = SMatrixModel([NARROW])
        pts = rng.uniform(-2, 2, 200) + 1j * rng.uniform(-2, 2, 200)
        assert np.max(np.abs(m.s_values(pts) * m.s_values(-pts) - 1)) <= 1e-11

    def test_pole_zero_pairing(self):
        m = SMatrixModel([NARROW])
        pole_positions = [p for p, _ in poles_of(m.rational)]
        fourth = [p for p in pole_positions if p.real > 0 and p.imag < 0]
        assert len(fourth) == 1
        # zero at the conjugate of the fourth-quadrant pole
        zero = fourth[0].conjugate()
        assert abs(m.rational.values(zero)) < 1e-10

    def test_minimum_pole_separation(self):
        with pytest.raises(ValidationError):
            SMatrixModel([NARROW, ResonancePole(1 - 0.05j + 1e-8)])

    def test_pole_proximity_guard(self):
        m = SMatrixModel([NARROW])
        with pytest.raises(PoleProximityError):
            m.s_value(MomentumPoint(NARROW.w_R + 1e-13))

    def test_single_pole_value_matches_rational_oracle(self):
        m = SMatrixModel([NARROW])
        w = 1.0
        wr = NARROW.w_R
        expect = ((w - wr.conjugate()) * (w + wr)
                  / ((w - wr) * (w + wr.conjugate())))
        assert abs(m.s_value(MomentumPoint(w)) - expect) < 1e-14


class TestPhaseShift:
    def test_resonance_phase_rise(self):
        m = SMatrixModel([NARROW])
        lo = max(NARROW.E_R - 5 * NARROW.gamma, 1e-6)
        hi = NARROW.E_R + 5 * NARROW.gamma
        rise = m.phase_shift(hi) - m.phase_shift(lo)
        # ~pi across the resonance (2*atan(10) plus slow background drift)
        assert 2.8 < rise < math.pi + 0.2

    def test_half_rise_at_resonance_for_narrow_pole(self):
        # Breit-Wigner phase at 5 widths below the peak sits atan(1/10)
        # above its asymptote, so the rise to the peak is pi/2 - atan(1/10)
        pole = ResonancePole(1 - 0.01j)  # gamma/E_R = 0.04
        m = SMatrixModel([pole])
        lo = pole.E_R - 5 * pole.gamma
        rise = m.phase_shift(pole.E_R) - m.phase_shift(lo)
        assert rise == pytest.approx(math.pi / 2 - math.atan(0.1), abs=0.02)
        assert rise == pytest.approx(math.pi / 2, abs=0.12)

    def test_reproduces_s_matrix(self):
        m = SMatrixModel([NARROW, ResonancePole(2 - 0.2j)])
        for E in (0.3, 0.9975, 1.7, 4.2):
            s_direct = m.s_value(MomentumPoint(math.sqrt(E)))
            assert abs(s_direct - cmath.exp(2j * m.phase_shift(E))) <= 1e-12

    def test_rejects_nonpositive_energy(self):
        m = SMatrixModel([NARROW])
        with pytest.raises(ValidationError):
            m.phase_shift(0.0)
        with pytest.raises(ValidationError):
            m.phase_shift(-1.0)


class TestLaurentAtPole:
    def test_simple_pole_chain_rule(self):
        m = SMatrixModel([NARROW])
        a1 = m.laurent_at_pole(NARROW, 1)
        res_w = laurent_coefficient(m.rational, NARROW.w_R, 1)
        assert abs(a1 - 2 * NARROW.w_R * res_w) < 1e-13 * abs(a1)

    def test_simple_pole_against_energy_contour(self):
        m = SMatrixModel([NARROW])
        a1 = m.laurent_at_pole(NARROW, 1)
        orac = energy_circle_laurent(m, NARROW.z_R, 1)
        assert abs(a1 - orac) <= 1e-8 * abs(a1)

    def test_index_above_order_rejected(self):
        m = SMatrixModel([NARROW])
        with pytest.raises(ValidationError):
            m.laurent_at_pole(NARROW, 2)

    def test_order2_coefficients_against_contour(self):
        pole = ResonancePole(1 - 0.05j, order=2)
        m = SMatrixModel([pole])
        for n in (1, 2):
            a = m.laurent_at_pole(pole, n)
            orac = energy_circle_laurent(m, pole.z_R, n, radius=3e-3)
            assert abs(a - orac) <= 1e-8 * abs(a)

    def test_foreign_pole_rejected(self):
        m = SMatrixModel([NARROW])
        with pytest.raises(ValidationError):
            m.laurent_at_pole(ResonancePole(2 - 0.2j), 1)
