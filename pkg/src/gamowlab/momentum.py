"""Two-sheeted complex energy surface, uniformized by the momentum w.

With E = w**2 (hbar = 1, single channel, threshold at E = 0) the upper
half of the w-plane covers the first ("physical") energy sheet and the
lower half covers the second sheet, so second-sheet evaluation of any
function of E is ordinary function evaluation in w.  The background
contour of the complex basis expansion becomes a straight ray
w = s*exp(-i*theta) in this variable.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import AmbiguityError, ValidationError


class Sheet(enum.Enum):
    I = "I"
    II = "II"
    BOUNDARY = "boundary"


def _require_finite(value: complex, what: str) -> None:
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise ValidationError(f"{what} must be finite, got {value!r}")


@dataclass(frozen=True)
class MomentumPoint:
    """A point in the complex momentum plane."""

    w: complex

    def __post_init__(self):
        object.__setattr__(self, "w", complex(self.w))
        _require_finite(self.w, "momentum w")


@dataclass(frozen=True)
class SheetedEnergy:
    """A complex energy together with the Riemann sheet it lives on."""

    E: complex
    sheet: Sheet

    def __post_init__(self):
        object.__setattr__(self, "E", complex(self.E))
        _require_finite(self.E, "energy E")
        if not isinstance(self.sheet, Sheet):
            raise ValidationError(f"sheet must be a Sheet member, got {self.sheet!r}")


@dataclass(frozen=True)
class DeformedPath:
    """Rotated-ray contour w = s*exp(-i*theta), s in [0, s_max].

    theta is measured clockwise from the positive real w-axis; theta = pi/4
    is the steepest-descent choice for exp(-i*w**2*t) at t > 0, where the
    oscillatory factor becomes exp(-s**2*t).
    """

    theta: float = math.pi / 4
    s_max: float = 40.0
    node_count: int = 64

    def __post_init__(self):
        if not (0.0 < self.theta <= math.pi / 2):
            raise ValidationError(f"path angle must lie in (0, pi/2], got {self.theta}")
        if not (self.s_max > 0.0 and math.isfinite(self.s_max)):
            raise ValidationError(f"path cutoff s_max must be positive, got {self.s_max}")
        if self.node_count < 16:
            raise ValidationError(f"node_count must be >= 16, got {self.node_count}")


def energy_of(p: MomentumPoint) -> SheetedEnergy:
    """Map a momentum point to E = w**2 with its sheet tag.

    Im w > 0 lands on sheet I, Im w < 0 on sheet II, the real w-axis on the
    boundary (the cut for E > 0).
    """
    w = p.w
    if w.imag > 0.0:
        sheet = Sheet.I
    elif w.imag < 0.0:
        sheet = Sheet.II
    else:
        sheet = Sheet.BOUNDARY
    return SheetedEnergy(w * w, sheet)


def momentum_of(e: SheetedEnergy) -> MomentumPoint:
    """Invert E = w**2 onto the requested sheet.

    Returns the square root in the open upper (sheet I) or open lower
    (sheet II) half plane.  Raises AmbiguityError at E = 0, on the
    boundary sheet, and for cut energies (real E > 0) where both roots are
    real and no half-plane choice exists.
    """
    if e.sheet is Sheet.BOUNDARY:
        raise AmbiguityError("boundary-sheet energy has no half-plane momentum")
    if e.E == 0:
        raise AmbiguityError("threshold energy E = 0 has no sheet-resolved momentum")
    root = cmath.sqrt(e.E)
    if root.imag == 0.0:
        raise AmbiguityError(
            f"energy {e.E!r} lies on the cut; momentum roots are real on both sheets"
        )
    if e.sheet is Sheet.I:
        w = root if root.imag > 0.0 else -root
    else:
        w = root if root.imag < 0.0 else -root
    return MomentumPoint(w)


# Gauss-Legendre order used for each panel of a sampled path.  Weights of
# a sampled path integrate polynomials of degree <= 2*PANEL_ORDER - 1
# exactly over [0, s_max].
PANEL_ORDER = 16


def sample_path(path: DeformedPath) -> list[tuple[MomentumPoint, complex]]:
    """Quadrature nodes and weights along the rotated ray.

    Gauss-Legendre panels of order PANEL_ORDER tile [0, s_max]; the number
    of nodes is node_count rounded up to a full panel.  Weights carry the
    path derivative exp(-i*theta), so sum(w_k * f(node_k)) approximates the
    contour integral of f along the ray.
    """
    panels = -(-path.node_count // PANEL_ORDER)
    x, gl_w = np.polynomial.legendre.leggauss(PANEL_ORDER)
    phase = cmath.exp(-1j * path.theta)
    edges = np.linspace(0.0, path.s_max, panels + 1)
    out: list[tuple[MomentumPoint, complex]] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        for xi, wi in zip(x, gl_w):
            s = mid + half * xi
            out.append((MomentumPoint(s * phase), wi * half * phase))
    return out
