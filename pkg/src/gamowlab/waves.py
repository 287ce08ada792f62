"""Hardy-class surrogates for prepared states and registered observables.

Membership in the two Hardy classes is operationalized as pole-location
constraints in the momentum plane plus a decay (degree-gap) condition:

* a state wave keeps the closed fourth quadrant {Re w >= 0, Im w <= 0}
  free of poles, so it continues onto the deformation sector of the
  second sheet;
* an observable wave keeps the closed first quadrant free, so its
  Schwarz reflection K(w) = conj(g(conj(w))) is analytic there instead.

Pairings are spectral integrals over the physical half line; pole-point
functionals (order-k energy derivatives at second-sheet points) are exact
local series algebra, with the chain rule d/dE = (1/(2w)) d/dw realized by
composing with the sheet-consistent branch of w(E).
"""

from __future__ import annotations

import math

import numpy as np

from ._series import series_compose, sqrt_branch_series
from .errors import NumericsError, PoleProximityError, ValidationError
from .momentum import Sheet, SheetedEnergy, momentum_of
from .quadrature import adaptive_quad, half_line_breaks
from .rational import RationalFunction

QUADRANT_CLEARANCE = 1e-9
MIN_DEGREE_GAP = 2
MAX_FUNCTIONAL_ORDER = 8
PAIR_REL_TOL = 1e-9


def _dist_to_closed_q4(z: complex) -> float:
    return math.hypot(max(0.0, -z.real), max(0.0, z.imag))


def _dist_to_closed_q1(z: complex) -> float:
    return math.hypot(max(0.0, -z.real), max(0.0, -z.imag))


class _Wave:
    """Shared validation for the two wave roles."""

    __slots__ = ("f",)
    _distance = None
    _region = ""

    def __init__(self, f, den=None):
        if not isinstance(f, RationalFunction):
            f = RationalFunction(f, den if den is not None else (1.0,))
        elif den is not None:
            raise ValidationError("pass either a RationalFunction or coefficients")
        if not f.is_zero():
            if f.degree_gap < MIN_DEGREE_GAP:
                raise ValidationError(
                    f"wave needs degree gap >= {MIN_DEGREE_GAP}, got {f.degree_gap}"
                )
            for root, _ in f.poles():
                if type(self)._distance(root) < QUADRANT_CLEARANCE:
                    raise ValidationError(
                        f"wave pole {root!r} inside or within {QUADRANT_CLEARANCE} "
                        f"of the closed {self._region} quadrant"
                    )
        object.__setattr__(self, "f", f)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __repr__(self):
        return f"{type(self).__name__}({self.f!r})"


class StateWave(_Wave):
    """Prepared in-state wave; pole-free on the closed fourth quadrant."""

    _distance = staticmethod(_dist_to_closed_q4)
    _region = "fourth"


class ObservableWave(_Wave):
    """Registered observable wave; pole-free on the closed first quadrant."""

    _distance = staticmethod(_dist_to_closed_q1)
    _region = "first"


def reflect(o: ObservableWave) -> RationalFunction:
    """Schwarz reflection K(w) = conj(o(conj(w))).

    On the real axis K equals the complex conjugate of the observable
    wave; its poles are the conjugates of the observable's poles, so K is
    analytic on the closed fourth quadrant and continues onto the
    deformation sector.
    """
    return o.f.conjugate_reflection()


def energy_functional(fr: RationalFunction, z: SheetedEnergy, k: int) -> complex:
    """(1/k!) (d/dE)^k of fr(w(E)) at E = z, on the sheet of z.

    The sheet-consistent branch w(E) is composed as an exact local series
    about the momentum point of z, so this is the chain-rule derivative
    d/dE = (1/(2w)) d/dw carried out in closed form.
    """
    if not (isinstance(k, int) and 0 <= k <= MAX_FUNCTIONAL_ORDER):
        raise ValidationError(
            f"functional order must be 0..{MAX_FUNCTIONAL_ORDER}, got {k}"
        )
    w0 = momentum_of(z).w
    for root, _ in fr.poles():
        if abs(root - w0) < 1e-9:
            raise PoleProximityError(
                f"continued wave has a pole at the evaluation point {w0!r}", root
            )
    outer = fr.taylor(w0, k + 1)
    inner = sqrt_branch_series(w0, k + 1)
    inner[0] = 0.0
    composed = series_compose(outer, inner, k + 1)
    return complex(composed[k])


def gamow_functional(s: StateWave, z: SheetedEnergy, k: int = 0) -> complex:
    """Order-k Gamow functional of a state wave at a second-sheet point."""
    if z.sheet is not Sheet.II:
        raise ValidationError("Gamow functionals live on sheet II")
    return energy_functional(s.f, z, k)


def pairing_density(o: ObservableWave, s: StateWave) -> RationalFunction:
    """The momentum-plane density 2w K(w) f(w) of the spectral pairing."""
    two_w = RationalFunction(np.array([0.0, 2.0], dtype=complex))
    return two_w * reflect(o) * s.f


def pair(o: ObservableWave, s: StateWave) -> complex:
    """Spectral pairing integral over the physical half line.

    Computes int_0^inf conj(o)(E) s(E) dE as int_0^inf 2w K(w) f(w) dw,
    by adaptive quadrature on [0, W] with W grown until the analytic tail
    bound |h(W)| W / 2 falls under the relative target of 1e-9.
    """
    if s.f.is_zero() or o.f.is_zero():
        return 0j
    h = pairing_density(o, s)
    if h.degree_gap < 3:
        raise NumericsError("pairing density decays too slowly for the tail bound")
    W = 64.0
    value, _ = adaptive_quad(h.values, half_line_breaks(W), rel_tol=1e-11)
    scale = abs(value) if value != 0 else 1.0
    for _ in range(40):
        bound = abs(complex(h.values(W))) * W  # safety factor 2 over |h(W)| W/2
        if bound <= 0.5 * PAIR_REL_TOL * scale:
            break
        W *= 2.0
    else:
        raise NumericsError("tail bound failed to close (degree condition violated?)")
    value, _ = adaptive_quad(h.values, half_line_breaks(W), rel_tol=1e-11,
                             abs_floor=1e-13 * scale)
    return value
