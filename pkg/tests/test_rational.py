import numpy as np
import pytest

from gamowlab.errors import PoleProximityError, ValidationError
from gamowlab.rational import (RationalFunction, differentiate,
                               laurent_coefficient, poles_of, residue)

from oracles import circle_laurent

A = 2 + 1j


def linfac(root):
    return np.array([-root, 1.0], dtype=complex)


def conv(*factors):
    out = np.array([1.0 + 0j])
    for f in factors:
        out = np.convolve(out, f)
    return out


class TestConstruction:
    def test_zero_denominator_rejected(self):
        with pytest.raises(ValidationError):
            RationalFunction([1.0], [0.0])

    def test_monic_normalization(self):
        f = RationalFunction([2.0], [4.0, 2.0])
        assert f.den[-1] == 1.0
        assert f.evaluate(0.0) == pytest.approx(0.5)

    def test_common_roots_cancelled(self):
        f = RationalFunction(conv(linfac(A), linfac(-1.0)),
                             conv(linfac(A), linfac(3j)))
        assert len(f.den) == 2  # only the 3j pole survives
        assert abs(f.evaluate(0.0) - (0 + 1) / (0 - 3j)) < 1e-12

    def test_degree_cap(self):
        with pytest.raises(ValidationError):
            RationalFunction([1.0], [1.0] + [0.0] * 24 + [1.0])

    def test_zero_numerator_normal_form(self):
        f = RationalFunction([0.0], [1.0, 1.0])
        assert f.is_zero()
        assert f.evaluate(5.0) == 0

    def test_immutable(self):
        f = RationalFunction([1.0], [1.0, 1.0])
        with pytest.raises(AttributeError):
            f.num = np.array([2.0])


class TestEvaluate:
    def test_simple_pole_shift(self):
        f = RationalFunction([1.0], linfac(A))
        assert f.evaluate(A + 1) == pytest.approx(1.0)

    def test_quadratic_over_linear(self):
        f = RationalFunction([1.0, 0.0, 1.0], [2.0, 1.0])
        assert f.evaluate(0.0) == pytest.approx(0.5)

    def test_model_wave_double_pole(self):
        f = RationalFunction([1.0], conv(linfac(-1 - 2j), linfac(-1 - 2j)))
        assert f.evaluate(0.0) == pytest.approx(1 / (-3 + 4j))

    def test_pole_proximity_error_carries_root(self):
        f = RationalFunction([1.0], linfac(A))
        with pytest.raises(PoleProximityError) as err:
            f.evaluate(A + 1e-13)
        assert abs(err.value.root - A) < 1e-10


class TestDifferentiate:
    def test_first_derivative_of_simple_pole(self):
        f = RationalFunction([1.0], linfac(A))
        d = differentiate(f, 1)
        for w in (0.0, 1j, -2.5):
            assert abs(d.evaluate(w) - (-1 / (w - A) ** 2)) < 1e-13

    def test_order_zero_is_identity(self):
        f = RationalFunction([1.0, 2.0], linfac(A))
        d = differentiate(f, 0)
        assert np.allclose(d.num, f.num) and np.allclose(d.den, f.den)

    def test_second_derivative_of_simple_pole(self):
        f = RationalFunction([1.0], linfac(A))
        d = differentiate(f, 2)
        for w in (0.0, 1.5j):
            assert abs(d.evaluate(w) - 2 / (w - A) ** 3) < 1e-13

    def test_order_cap(self):
        f = RationalFunction([1.0], linfac(A))
        with pytest.raises(ValidationError):
            differentiate(f, 13)
        with pytest.raises(ValidationError):
            differentiate(f, -1)

    def test_leibniz_rule_at_random_points(self):
        rng = np.random.RandomState(12)
        f = RationalFunction([1.0, 0.5j], conv(linfac(-2 - 1j), linfac(0.3j)))
        g = RationalFunction([0.7, 1.0], linfac(1.5 - 2j))
        lhs = differentiate(f * g, 1)
        rhs = differentiate(f, 1) * g + f * differentiate(g, 1)
        for _ in range(20):
            w = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
            try:
                a, b = lhs.evaluate(w), rhs.evaluate(w)
            except PoleProximityError:
                continue
            assert abs(a - b) <= 1e-11 * max(abs(a), 1.0)

    def test_polynomial_derivative(self):
        p = RationalFunction([1.0, 2.0, 3.0])
        d = differentiate(p, 1)
        assert d.evaluate(2.0) == pytest.approx(2 + 6 * 2)


class TestLaurent:
    def test_double_pole_coefficients(self):
        f = RationalFunction([1.0], conv(linfac(A), linfac(A)))
        assert laurent_coefficient(f, A, 2) == pytest.approx(1.0)
        assert abs(laurent_coefficient(f, A, 1)) < 1e-12

    def test_simple_residue(self):
        f = RationalFunction([1.0, 1.0], linfac(A))
        assert residue(f, A) == pytest.approx(A + 1)

    def test_simple_residue_against_tight_circle(self):
        f = RationalFunction([1.0, 0.3], conv(linfac(A), linfac(-1 + 0.5j)))
        exact = laurent_coefficient(f, A, 1)
        orac = circle_laurent(lambda z: f.values(z), A, 1, radius=1e-3)
        assert abs(exact - orac) <= 1e-8 * abs(exact)

    def test_against_circle_contour_oracle(self):
        # multiplicities 1..3 of a nontrivial product; the circle radius
        # must stay well above the eps^(1/m) floor of the repeated root
        den = conv(linfac(A), linfac(A), linfac(A), linfac(-1 + 0.5j))
        f = RationalFunction([1.0, 0.3, 0.1], den)
        for n in (1, 2, 3):
            exact = laurent_coefficient(f, A, n)
            orac = circle_laurent(lambda z: f.values(z), A, n, radius=0.08)
            assert abs(exact - orac) <= 1e-8 * max(abs(exact), 1e-6)

    def test_not_a_pole(self):
        f = RationalFunction([1.0], linfac(A))
        with pytest.raises(ValidationError):
            laurent_coefficient(f, 5.0, 1)

    def test_multiplicity_too_small(self):
        f = RationalFunction([1.0], linfac(A))
        with pytest.raises(ValidationError):
            laurent_coefficient(f, A, 2)

    def test_residue_sum_vanishes_for_decaying_functions(self):
        rng = np.random.RandomState(8)
        for _ in range(5):
            roots = [complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
                     for _ in range(4)]
            f = RationalFunction([rng.uniform(-1, 1), rng.uniform(-1, 1), 1.0],
                                 conv(*[linfac(r) for r in roots]))
            total = sum(residue(f, r) for r, _ in poles_of(f))
            assert abs(total) < 1e-10


class TestPolesOf:
    def test_two_simple_poles(self):
        f = RationalFunction([1.0], conv(linfac(1j), linfac(-2.0)))
        found = poles_of(f)
        assert [(round(p.real, 9), round(p.imag, 9), m) for p, m in found] == [
            (-2.0, 0.0, 1), (0.0, 1.0, 1)]

    def test_triple_pole(self):
        f = RationalFunction([1.0], conv(linfac(A), linfac(A), linfac(A)))
        [(p, m)] = poles_of(f)
        assert m == 3 and abs(p - A) < 1e-10

    def test_quadruple_pole(self):
        f = RationalFunction([1.0], conv(*[linfac(A)] * 4))
        [(p, m)] = poles_of(f)
        assert m == 4 and abs(p - A) < 1e-10

    def test_near_coincident_simple_poles_stay_simple(self):
        # the coarse eigenvalue cluster over-merges at this gap; the
        # multiplicity validation must force the split
        base = 1.0 + 0.5j
        for gap in (1e-3, 5e-4):
            den = conv(linfac(base), linfac(base + gap), linfac(-2 + 1j))
            found = poles_of(RationalFunction([1.0], den))
            assert sorted(m for _, m in found) == [1, 1, 1]
            near = sorted((p for p, _ in found if abs(p - base) < 0.01),
                          key=lambda z: z.real)
            assert abs(near[0] - base) < 1e-9
            assert abs(near[1] - (base + gap)) < 1e-9

    def test_product_takes_pole_union(self):
        f1 = RationalFunction([1.0], linfac(1 - 0.05j))
        f2 = RationalFunction([1.0], linfac(2 + 0.3j))
        combined = poles_of(f1 * f2)
        singles = sorted(poles_of(f1) + poles_of(f2),
                         key=lambda pm: (pm[0].real, pm[0].imag))
        assert len(combined) == 2
        for (p, m), (q, n) in zip(combined, singles):
            assert m == n == 1 and abs(p - q) < 1e-10


class TestLocalExpansions:
    def test_taylor_matches_geometric_series(self):
        f = RationalFunction([1.0], linfac(A))
        coeffs = f.taylor(0.0, 5)
        expect = [-1 / A ** (k + 1) for k in range(5)]
        assert np.allclose(coeffs, expect, rtol=1e-13)

    def test_taylor_refuses_pole(self):
        f = RationalFunction([1.0], linfac(A))
        with pytest.raises(PoleProximityError):
            f.taylor(A, 3)

    def test_asymptotic_series(self):
        # (w + 1) / (w**2 + 2) = 1/w + 1/w**2 - 2/w**3 - 2/w**4 + ...
        f = RationalFunction([1.0, 1.0], [2.0, 0.0, 1.0])
        c = f.asymptotic_coefficients(4)
        assert c[1] == pytest.approx(1.0)
        assert c[2] == pytest.approx(1.0)
        assert c[3] == pytest.approx(-2.0)
        assert c[4] == pytest.approx(-2.0)

    def test_asymptotic_requires_decay(self):
        f = RationalFunction([1.0, 1.0], [2.0, 1.0])
        with pytest.raises(ValidationError):
            f.asymptotic_coefficients(3)
