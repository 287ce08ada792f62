import cmath
import math

import numpy as np
import pytest

from gamowlab.errors import AmbiguityError, ValidationError
from gamowlab.momentum import (PANEL_ORDER, DeformedPath, MomentumPoint,
                               Sheet, SheetedEnergy, energy_of, momentum_of,
                               sample_path)


class TestEnergyOf:
    def test_real_axis_is_boundary(self):
        e = energy_of(MomentumPoint(1.0))
        assert e.E == 1.0 and e.sheet is Sheet.BOUNDARY

    def test_upper_half_is_sheet_one(self):
        e = energy_of(MomentumPoint(1j))
        assert e.E == -1.0 and e.sheet is Sheet.I

    def test_fourth_quadrant_is_sheet_two(self):
        e = energy_of(MomentumPoint(1 - 0.05j))
        assert e.E == pytest.approx(0.9975 - 0.1j, abs=1e-15)
        assert e.sheet is Sheet.II

    def test_rejects_nonfinite(self):
        with pytest.raises(ValidationError):
            MomentumPoint(complex("inf"))
        with pytest.raises(ValidationError):
            MomentumPoint(complex(1.0, float("nan")))


class TestMomentumOf:
    def test_sheet_one_negative_energy(self):
        assert momentum_of(SheetedEnergy(-1.0, Sheet.I)).w == 1j

    def test_sheet_two_negative_energy(self):
        assert momentum_of(SheetedEnergy(-1.0, Sheet.II)).w == -1j

    def test_round_trip_from_pole_energy(self):
        w = momentum_of(SheetedEnergy(0.9975 - 0.1j, Sheet.II)).w
        assert abs(w * w - (0.9975 - 0.1j)) < 1e-15
        assert abs(w - (1 - 0.05j)) < 1e-14

    def test_boundary_sheet_is_ambiguous(self):
        with pytest.raises(AmbiguityError):
            momentum_of(SheetedEnergy(1.0, Sheet.BOUNDARY))

    def test_zero_energy_is_ambiguous(self):
        with pytest.raises(AmbiguityError):
            momentum_of(SheetedEnergy(0.0, Sheet.I))

    def test_cut_energy_is_ambiguous(self):
        with pytest.raises(AmbiguityError):
            momentum_of(SheetedEnergy(2.5, Sheet.II))

    def test_round_trip_random(self):
        rng = np.random.RandomState(3)
        for _ in range(100):
            w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if abs(w.imag) < 1e-6:
                continue
            back = momentum_of(energy_of(MomentumPoint(w))).w
            assert abs(back - w) <= 1e-14 * abs(w)

    def test_sheet_flip_under_conjugation(self):
        rng = np.random.RandomState(4)
        for _ in range(50):
            w = complex(rng.uniform(0.1, 3), rng.uniform(0.1, 3))
            e = energy_of(MomentumPoint(w))
            e_conj = energy_of(MomentumPoint(w.conjugate()))
            assert e_conj.E == e.E.conjugate()
            assert {e.sheet, e_conj.sheet} == {Sheet.I, Sheet.II}


class TestDeformedPath:
    def test_angle_range(self):
        with pytest.raises(ValidationError):
            DeformedPath(theta=0.0)
        with pytest.raises(ValidationError):
            DeformedPath(theta=math.pi / 2 + 0.01)
        DeformedPath(theta=math.pi / 2)  # boundary allowed

    def test_cutoff_and_nodes(self):
        with pytest.raises(ValidationError):
            DeformedPath(s_max=0.0)
        with pytest.raises(ValidationError):
            DeformedPath(node_count=8)


class TestSamplePath:
    def test_vertical_ray_nodes(self):
        nodes = sample_path(DeformedPath(theta=math.pi / 2, s_max=1.0,
                                         node_count=16))
        assert len(nodes) == 16
        for pt, _ in nodes:
            assert pt.w.real == pytest.approx(0.0, abs=1e-16)
            assert pt.w.imag < 0

    def test_node_arguments_on_diagonal_ray(self):
        nodes = sample_path(DeformedPath(theta=math.pi / 4, s_max=2.0,
                                         node_count=32))
        for pt, _ in nodes:
            assert cmath.phase(pt.w) == pytest.approx(-math.pi / 4, abs=1e-15)

    def test_weights_integrate_constant(self):
        path = DeformedPath(theta=math.pi / 4, s_max=3.0, node_count=48)
        total = sum(wt for _, wt in sample_path(path))
        expect = path.s_max * cmath.exp(-1j * path.theta)
        assert abs(total - expect) < 1e-14

    def test_weights_exact_for_high_degree_polynomials(self):
        path = DeformedPath(theta=0.9, s_max=1.7, node_count=32)
        nodes = sample_path(path)
        end = path.s_max * cmath.exp(-1j * path.theta)
        for k in range(2 * PANEL_ORDER):
            total = sum(wt * pt.w ** k for pt, wt in nodes)
            exact = end ** (k + 1) / (k + 1)
            assert abs(total - exact) <= 1e-13 * abs(exact)

    def test_node_count_rounds_up_to_full_panels(self):
        nodes = sample_path(DeformedPath(node_count=17))
        assert len(nodes) == 2 * PANEL_ORDER
