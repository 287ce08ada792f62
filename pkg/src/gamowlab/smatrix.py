"""Unimodular meromorphic S-matrix models with resonance poles on the
second sheet.

S is modeled directly as a Blaschke-type product in the momentum variable,

    S(w) = prod_i [ (w - conj(w_Ri)) (w + w_Ri)
                    / ((w - w_Ri) (w + conj(w_Ri))) ]**N_i,

which is exactly unimodular on the real axis and satisfies S(w)S(-w) = 1.
Poles of order N sit at w_Ri in the fourth quadrant (energy z_R = w_R**2
in the lower half of sheet II) with mirror poles at -conj(w_Ri); zeros sit
at the conjugate points.  Higher-order poles are exact repeated factors.

Laurent coefficients are reported in the energy variable at z_R; the
w -> E chain rule is centralized here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import NumericsError, ValidationError
from .momentum import MomentumPoint
from .rational import RationalFunction, laurent_coefficient

MIN_POLE_SEPARATION = 1e-6
MAX_POLE_ORDER = 4


@dataclass(frozen=True)
class ResonancePole:
    """Order-N resonance pole at momentum w_R (fourth quadrant).

    Derived data: z_R = w_R**2 on sheet II, resonance energy E_R = Re z_R,
    width gamma = -2 Im z_R > 0.
    """

    w_R: complex
    order: int = 1

    def __post_init__(self):
        object.__setattr__(self, "w_R", complex(self.w_R))
        w = self.w_R
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            raise ValidationError("pole momentum must be finite")
        if not (w.real > 0.0 and w.imag < 0.0):
            raise ValidationError(
                f"pole momentum {w!r} must lie in the open fourth quadrant"
            )
        if not (isinstance(self.order, int) and 1 <= self.order <= MAX_POLE_ORDER):
            raise ValidationError(f"pole order must be 1..{MAX_POLE_ORDER}")

    @property
    def z_R(self) -> complex:
        return self.w_R * self.w_R

    @property
    def E_R(self) -> float:
        return self.z_R.real

    @property
    def gamma(self) -> float:
        return -2.0 * self.z_R.imag

    @property
    def gamow_norm(self) -> float:
        """Conventional sqrt(2*pi*gamma) normalization label.

        Reported for reference only; expansion coefficients are fixed
        absolutely by residue calculus and never use this number.
        """
        return math.sqrt(2.0 * math.pi * self.gamma)


@dataclass(frozen=True)
class SMatrixModel:
    """Blaschke product over a collection of resonance poles."""

    poles: tuple[ResonancePole, ...] = ()
    _rational: RationalFunction = field(init=False, repr=False, compare=False)

    def __init__(self, poles=()):
        poles = tuple(poles)
        for p in poles:
            if not isinstance(p, ResonancePole):
                raise ValidationError(f"expected ResonancePole, got {type(p)}")
        for i in range(len(poles)):
            for j in range(i + 1, len(poles)):
                if abs(poles[i].w_R - poles[j].w_R) < MIN_POLE_SEPARATION:
                    raise ValidationError(
                        "pole positions must be separated by at least "
                        f"{MIN_POLE_SEPARATION}"
                    )
        object.__setattr__(self, "poles", poles)
        num = np.array([1.0 + 0j])
        den = np.array([1.0 + 0j])
        for p in poles:
            wr = p.w_R
            f_num = P.polymul([-np.conj(wr), 1.0], [wr, 1.0])
            f_den = P.polymul([-wr, 1.0], [np.conj(wr), 1.0])
            for _ in range(p.order):
                num = P.polymul(num, f_num)
                den = P.polymul(den, f_den)
        object.__setattr__(self, "_rational", RationalFunction(num, den))

    @property
    def rational(self) -> RationalFunction:
        return self._rational

    def s_value(self, p) -> complex:
        """S at a momentum point; guarded against pole/mirror proximity."""
        w = p.w if isinstance(p, MomentumPoint) else complex(p)
        return self._rational.evaluate(w)

    def s_values(self, w) -> np.ndarray:
        """Unguarded vectorized evaluation for contour work."""
        return self._rational.values(w)

    def phase_shift(self, E: float) -> float:
        """delta(E) = (1/2) arg S(sqrt(E)), unwrapped continuously from 0+.

        S(0) = 1 pins delta(0+) = 0; the phase is tracked along the real
        momentum axis with adaptive step refinement (at least ~32 samples
        across each resonance width).  exp(2i delta) reproduces S exactly
        by construction of the wrapped increments.
        """
        if not (E > 0.0 and math.isfinite(E)):
            raise ValidationError(f"phase shift needs real E > 0, got {E}")
        w_top = math.sqrt(E)
        grid = [0.0, w_top]
        for p in self.poles:
            half_width = abs(p.w_R.imag)
            center = p.w_R.real
            lo = max(0.0, center - 16 * half_width)
            hi = min(w_top, center + 16 * half_width)
            if lo < hi:
                n = max(int(32 * 16 * 2), 64)
                grid.extend(np.linspace(lo, hi, n).tolist())
        grid.extend(np.linspace(0.0, w_top, 65).tolist())
        w = np.unique(np.asarray(grid))
        w = w[(w >= 0.0) & (w <= w_top)]
        for _ in range(40):
            s = self._rational.values(w)
            dphi = np.angle(s[1:] / s[:-1])
            bad = np.abs(dphi) > 0.4
            if not np.any(bad):
                return 0.5 * float(np.sum(dphi))
            mids = 0.5 * (w[:-1][bad] + w[1:][bad])
            w = np.union1d(w, mids)
        raise NumericsError(
            "phase unwrap step control failed (sampling too coarse near a resonance)"
        )

    def laurent_at_pole(self, pole: ResonancePole, n: int) -> complex:
        """Energy-plane Laurent coefficient a_{-n} of S at z_R.

        Converted from the momentum-plane expansion through the exact
        residue identity
            a_{-n} = Res_w [ S(w) (w**2 - z_R)**(n-1) * 2w ]  at w_R,
        i.e. the chain rule dE = 2w dw done once, in rational algebra.
        """
        match = None
        for p in self.poles:
            if abs(p.w_R - pole.w_R) < 1e-12:
                match = p
                break
        if match is None:
            raise ValidationError(f"{pole!r} is not a pole of this model")
        if not (isinstance(n, int) and 1 <= n <= match.order):
            raise ValidationError(
                f"Laurent index {n} outside 1..{match.order} for this pole"
            )
        z_R = match.z_R
        weight = np.array([0.0, 2.0], dtype=complex)  # 2w
        factor = np.array([-z_R, 0.0, 1.0], dtype=complex)  # w**2 - z_R
        for _ in range(n - 1):
            weight = P.polymul(weight, factor)
        integrand = self._rational * RationalFunction(weight)
        return laurent_coefficient(integrand, match.w_R, 1)


def s_value(m: SMatrixModel, p) -> complex:
    return m.s_value(p)


def phase_shift(m: SMatrixModel, E: float) -> float:
    return m.phase_shift(E)


def laurent_at_pole(m: SMatrixModel, pole: ResonancePole, n: int) -> complex:
    return m.laurent_at_pole(pole, n)
