"""Exact arithmetic on rational functions of one complex variable.

This is the oracle substrate of the package: residues, Laurent
coefficients, derivatives, and analytic continuation of every model
object reduce to the coefficient algebra in here.  Functions are stored
as numerator/denominator coefficient arrays (ascending powers), with the
denominator monic and shared roots cancelled on construction.

Roots are found by companion-matrix eigenvalues, clustered into
multiplicities, and polished by Newton iteration on the appropriate
derivative; higher-order poles are expected to be exactly degenerate by
construction (repeated factors), not near-coincident simple roots.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import polynomial as P

from ._series import poly_shift, series_div, syndiv
from .errors import NumericsError, PoleProximityError, ValidationError

DEGREE_CAP = 24
DERIVATIVE_CAP = 12
CLUSTER_TOL = 1e-10   # dedup / num-den cancellation tolerance
POLE_GUARD = 1e-12    # evaluation keep-out radius around poles


def _trim(c) -> np.ndarray:
    c = np.atleast_1d(np.asarray(c, dtype=complex))
    n = len(c)
    while n > 1 and c[n - 1] == 0:
        n -= 1
    return c[:n].copy()


def _poly_from_roots(roots) -> np.ndarray:
    out = np.array([1.0 + 0j])
    for r in roots:
        out = P.polymul(out, np.array([-r, 1.0 + 0j]))
    return out


def _polish_root(coeffs, z0, mult):
    """Newton-polish a root of multiplicity mult.

    A root of multiplicity m of p is a simple root of p^(m-1); Newton on
    that derivative converges quadratically from the cluster centroid.
    """
    p = np.asarray(coeffs, dtype=complex)
    for _ in range(mult - 1):
        p = P.polyder(p)
    dp = P.polyder(p)
    z = complex(z0)
    for _ in range(100):
        fz = P.polyval(z, p)
        dfz = P.polyval(z, dp)
        if dfz == 0:
            break
        step = fz / dfz
        z -= step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            return z
    return z


def _derivative_scale(coeffs, z):
    return float(np.sum(np.abs(coeffs)) * max(1.0, abs(z)) ** max(len(coeffs) - 1, 0))


def _validate_multiplicity(coeffs, z, mult, rel_tol=1e-9):
    """True when p and its first mult-1 derivatives all vanish at z.

    Exactly repeated factors leave relative residuals near machine eps;
    the threshold rejects accidental merges of simple roots down to
    separations of order 1e-4.
    """
    p = np.asarray(coeffs, dtype=complex)
    for _ in range(mult):
        scale = _derivative_scale(p, z)
        if scale == 0.0:
            return False
        if abs(P.polyval(z, p)) > rel_tol * scale:
            return False
        p = P.polyder(p)
    return True


def _cluster_roots(coeffs, raw_roots, radius):
    """Greedy clustering of raw eigenvalue roots into (position, mult)."""
    order = np.lexsort((raw_roots.imag, raw_roots.real))
    roots = raw_roots[order]
    used = np.zeros(len(roots), dtype=bool)
    clusters = []
    for i in range(len(roots)):
        if used[i]:
            continue
        members = [roots[i]]
        used[i] = True
        center = roots[i]
        for j in range(i + 1, len(roots)):
            if used[j]:
                continue
            if abs(roots[j] - center) <= radius * max(1.0, abs(center)):
                members.append(roots[j])
                used[j] = True
                center = np.mean(members)
        clusters.append((complex(np.mean(members)), len(members), np.asarray(members)))
    out = []
    for center, mult, members in clusters:
        z = _polish_root(coeffs, center, mult)
        if mult > 1 and not _validate_multiplicity(coeffs, z, mult):
            # over-merged: recluster this group with a tighter radius
            if radius <= 1e-9:
                raise NumericsError(
                    f"root clustering failed to separate roots near {center!r}"
                )
            out.extend(_cluster_roots(coeffs, members, radius / 16.0))
            continue
        out.append((z, mult))
    return out


def poly_roots_clustered(coeffs):
    """Roots of a polynomial as (position, multiplicity) pairs.

    Companion-matrix eigenvalues, greedy multiplicity clustering, Newton
    polishing.  Exactly repeated factors cluster reliably; distinct roots
    are expected to be separated well away from the cluster radius.
    """
    c = _trim(coeffs)
    if len(c) == 1:
        return []
    raw = P.polyroots(c)
    raw = np.asarray(raw, dtype=complex)
    if not np.all(np.isfinite(raw.view(float))):
        raise NumericsError("companion-matrix root finding did not converge")
    clusters = _cluster_roots(c, raw, radius=1e-3)
    clusters.sort(key=lambda pm: (pm[0].real, pm[0].imag))
    return clusters


class RationalFunction:
    """Quotient of complex polynomials, denominator monic, no shared roots.

    Immutable value type.  ``num`` and ``den`` are ascending coefficient
    arrays; degree of either side is capped at DEGREE_CAP.
    """

    __slots__ = ("num", "den", "_poles")

    def __init__(self, num, den=(1.0,)):
        num = _trim(num)
        den = _trim(den)
        if np.all(den == 0):
            raise ValidationError("denominator is identically zero")
        if np.all(num == 0):
            num = np.array([0j])
            den = np.array([1.0 + 0j])
        else:
            num, den = self._cancel_common(num, den)
        lead = den[-1]
        num = num / lead
        den = den / lead
        den[-1] = 1.0 + 0j
        if len(num) - 1 > DEGREE_CAP or len(den) - 1 > DEGREE_CAP:
            raise ValidationError(
                f"degree cap {DEGREE_CAP} exceeded "
                f"(num {len(num) - 1}, den {len(den) - 1})"
            )
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_poles", None)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def _cancel_common(num, den):
        if len(num) == 1 or len(den) == 1:
            return num, den
        num_roots = poly_roots_clustered(num)
        den_roots = poly_roots_clustered(den)
        cancel = []
        for p, mp in num_roots:
            for q, mq in den_roots:
                if abs(p - q) <= CLUSTER_TOL * max(1.0, abs(q)):
                    cancel.append((0.5 * (p + q), min(mp, mq)))
                    break
        for root, mult in cancel:
            for _ in range(mult):
                num, _ = syndiv(num, root)
                den, _ = syndiv(den, root)
        return _trim(num), _trim(den)

    # -- basic queries ------------------------------------------------

    @property
    def degree_gap(self) -> int:
        return (len(self.den) - 1) - (len(self.num) - 1)

    def is_zero(self) -> bool:
        return len(self.num) == 1 and self.num[0] == 0

    def poles(self):
        """Clustered denominator roots as (position, multiplicity)."""
        if self._poles is None:
            object.__setattr__(
                self, "_poles", tuple(poly_roots_clustered(self.den))
            )
        return list(self._poles)

    # -- evaluation ---------------------------------------------------

    def evaluate(self, w: complex) -> complex:
        """Guarded evaluation; refuses points within POLE_GUARD of a pole."""
        w = complex(w)
        for root, _ in self.poles():
            if abs(w - root) < POLE_GUARD:
                raise PoleProximityError(
                    f"evaluation point {w!r} within {POLE_GUARD} of pole {root!r}",
                    root,
                )
        return complex(P.polyval(w, self.num) / P.polyval(w, self.den))

    def values(self, w):
        """Unguarded vectorized evaluation for contour work.

        Callers are responsible for keeping the sample points away from
        poles (quadrature paths do so by construction).
        """
        w = np.asarray(w, dtype=complex)
        return P.polyval(w, self.num) / P.polyval(w, self.den)

    def __call__(self, w):
        if np.ndim(w) == 0:
            return self.evaluate(w)
        return self.values(w)

    # -- arithmetic ---------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, RationalFunction):
            return RationalFunction(
                P.polymul(self.num, other.num), P.polymul(self.den, other.den)
            )
        return RationalFunction(self.num * complex(other), self.den)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction([complex(other)])
        return RationalFunction(
            P.polyadd(
                P.polymul(self.num, other.den), P.polymul(other.num, self.den)
            ),
            P.polymul(self.den, other.den),
        )

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction([complex(other)])
        return self + (-other)

    def __truediv__(self, other):
        if isinstance(other, RationalFunction):
            if other.is_zero():
                raise ZeroDivisionError("division by the zero rational function")
            return RationalFunction(
                P.polymul(self.num, other.den), P.polymul(self.den, other.num)
            )
        return RationalFunction(self.num / complex(other), self.den)

    def conjugate_reflection(self):
        """K with K(w) = conj(self(conj(w))): conjugate all coefficients."""
        return RationalFunction(np.conj(self.num), np.conj(self.den))

    def __repr__(self):
        return f"RationalFunction(num={self.num.tolist()}, den={self.den.tolist()})"

    # -- local expansions ----------------------------------------------

    def taylor(self, w0: complex, terms: int) -> np.ndarray:
        """Taylor coefficients at a regular point w0."""
        den0 = P.polyval(w0, self.den)
        scale = float(np.sum(np.abs(self.den)) * max(1.0, abs(w0)) ** (len(self.den) - 1))
        if abs(den0) <= 1e-13 * scale:
            raise PoleProximityError(
                f"Taylor expansion point {w0!r} is (numerically) a pole", w0
            )
        nsh = poly_shift(self.num, w0)
        dsh = poly_shift(self.den, w0)
        return series_div(nsh, dsh, terms)

    def laurent_series(self, pole: complex, terms: int):
        """Laurent data at a pole: (polished position, m, coefficients).

        Coefficients run ascending from delta**(-m); entry j multiplies
        (w - pole)**(j - m).
        """
        match = None
        for root, mult in self.poles():
            if abs(root - pole) <= 1e-6 * max(1.0, abs(root)):
                match = (root, mult)
                break
        if match is None:
            raise ValidationError(f"{pole!r} is not a pole of this function")
        root, m = match
        dsh = poly_shift(self.den, root)
        # the first m shifted coefficients vanish up to roundoff; drop them
        q = dsh[m:]
        if len(q) == 0 or abs(q[0]) <= 1e-12 * float(np.max(np.abs(dsh))):
            raise NumericsError(f"degenerate Laurent reduction at pole {root!r}")
        nsh = poly_shift(self.num, root)
        coeffs = series_div(nsh, q, terms)
        return root, m, coeffs

    def asymptotic_coefficients(self, kmax: int) -> dict[int, complex]:
        """Expansion at infinity: value(w) = sum c_k / w**k, k up to kmax.

        Requires decay at infinity (degree gap >= 1).
        """
        gap = self.degree_gap
        if gap < 1:
            raise ValidationError("asymptotic expansion requires decay at infinity")
        nrev = self.num[::-1]
        drev = self.den[::-1]
        ser = series_div(nrev, drev, max(kmax - gap + 1, 0))
        return {gap + j: complex(ser[j]) for j in range(len(ser))}


def evaluate(f: RationalFunction, w: complex) -> complex:
    """Module-level alias for guarded evaluation."""
    return f.evaluate(w)


def differentiate(f: RationalFunction, k: int) -> RationalFunction:
    """Exact k-th derivative, with pole-multiplicity cancellation.

    Each step computes (n'd - nd')/d**2 and strips the shared factor
    prod (w - p)**(m_p - 1), so the denominator grows by one power per
    distinct pole instead of doubling.  k is capped at DERIVATIVE_CAP.
    """
    if not isinstance(k, int) or k < 0:
        raise ValidationError(f"derivative order must be a nonnegative integer, got {k}")
    if k > DERIVATIVE_CAP:
        raise ValidationError(f"derivative order {k} exceeds cap {DERIVATIVE_CAP}")
    cur = f
    for _ in range(k):
        cur = _differentiate_once(cur)
    return cur


def _differentiate_once(f: RationalFunction) -> RationalFunction:
    if len(f.den) == 1:
        return RationalFunction(P.polyder(f.num), f.den)
    n, d = f.num, f.den
    numerator = P.polysub(P.polymul(P.polyder(n), d), P.polymul(n, P.polyder(d)))
    poles = f.poles()
    # shared factor prod (w - p)**(m-1) = den / prod (w - p)
    shared = d
    for root, _ in poles:
        shared, rem = syndiv(shared, root)
    deflated = _trim(numerator)
    if len(shared) > 1:
        deflated, rem = P.polydiv(deflated, shared)
        deflated = _trim(deflated)
    new_den = P.polymul(d, _poly_from_roots([root for root, _ in poles]))
    return RationalFunction(deflated, new_den)


def laurent_coefficient(f: RationalFunction, p: complex, n: int) -> complex:
    """Coefficient of (w - p)**(-n) in the Laurent expansion at the pole p.

    Computed by polynomial shift and series division (exact polynomial
    algebra, no quadrature).  Requires p to be a pole of multiplicity >= n.
    """
    if not isinstance(n, int) or n < 1:
        raise ValidationError(f"Laurent index must be a positive integer, got {n}")
    root, m, _ = f.laurent_series(p, terms=1)
    if m < n:
        raise ValidationError(
            f"pole at {root!r} has multiplicity {m} < requested order {n}"
        )
    _, _, coeffs = f.laurent_series(p, terms=m - n + 1)
    return complex(coeffs[m - n])


def residue(f: RationalFunction, p: complex) -> complex:
    return laurent_coefficient(f, p, 1)


def poles_of(f: RationalFunction):
    """Clustered poles with multiplicities, sorted by (Re, Im)."""
    return f.poles()
