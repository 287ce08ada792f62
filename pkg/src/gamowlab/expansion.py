"""Complex basis-vector expansion of pairing amplitudes: pole terms plus
second-sheet background.

The time-dependent amplitude is the spectral integral of the density
K(w) S(w) f(w) 2w with the factor e^{-i w**2 t}.  Rotating the half line
into the ray w = s e^{-i theta} sweeps across the S-matrix poles in the
deformation sector and leaves

    amplitude(t) = sum over poles of closed-form Jordan terms
                   + background integral along the rotated ray.

Pole coefficients come from exact residue/Laurent algebra: at an order-N
pole, c_k = -2 pi i * sum_{n >= k+1} a_{-n} Phi_{n-1-k}, pairing the
S-matrix Laurent data a_{-n} with the state-side functionals Phi_j; the
observable-side functionals carry the Jordan time factors at evaluation.

amplitude_direct never deforms: it is the oscillation-aware real-axis
reference that everything else is checked against.
"""

from __future__ import annotations

import cmath
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DeformationError, SemigroupDomainError, ValidationError
from .momentum import DeformedPath, Sheet, SheetedEnergy
from .quadrature import (adaptive_quad, asymptotic_tail, half_line_breaks,
                         oscillatory_tail)
from .rational import RationalFunction
from .smatrix import ResonancePole, SMatrixModel
from .waves import (ObservableWave, StateWave, energy_functional,
                    gamow_functional, reflect)

T_MAX_DIRECT = 200.0
W_CUT_DIRECT = 40.0
DIRECT_REL_TOL = 1e-10
BACKGROUND_REL_TOL = 1e-9
TAIL_TERMS = 14


def spectral_density(o: ObservableWave, s: StateWave,
                     m: SMatrixModel | None = None) -> RationalFunction:
    """Momentum-plane density 2w K(w) S(w) f(w) of the model amplitude."""
    two_w = RationalFunction(np.array([0.0, 2.0], dtype=complex))
    density = two_w * reflect(o) * s.f
    if m is not None:
        density = density * m.rational
    return density


def dirac_reconstruct(o: ObservableWave, s: StateWave) -> complex:
    """Pairing through the real-energy Dirac basis integral.

    Same object as waves.pair, evaluated with independent quadrature
    settings (fixed cutoff plus analytic power-series tail instead of a
    grown truncation bound); the two must agree to 1e-8.
    """
    if s.f.is_zero() or o.f.is_zero():
        return 0j
    h = spectral_density(o, s)
    value, _ = adaptive_quad(h.values, half_line_breaks(W_CUT_DIRECT),
                             rel_tol=DIRECT_REL_TOL)
    tail = asymptotic_tail(h.asymptotic_coefficients(h.degree_gap + TAIL_TERMS),
                           W_CUT_DIRECT)
    return value + tail


def amplitude_direct(o: ObservableWave, s: StateWave, m: SMatrixModel,
                     t: float, *, t_max: float = T_MAX_DIRECT) -> complex:
    """Reference amplitude by real-axis quadrature (no contour deformation).

    Oscillation-aware panels keep the phase t*w**2 below pi/4 per panel
    (panel size <= pi/(4t) in the energy variable); the truncated tail is
    restored by repeated integration by parts against the phase.  Slow
    but independent of the expansion machinery.
    """
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t < 0:
        raise SemigroupDomainError(f"amplitude is defined for t >= 0 only; got t={t}")
    if t > t_max:
        raise ValidationError(f"t={t} exceeds the direct-quadrature budget {t_max}")
    h = spectral_density(o, s, m)
    if t == 0.0:
        value, _ = adaptive_quad(h.values, half_line_breaks(W_CUT_DIRECT),
                                 rel_tol=DIRECT_REL_TOL)
        tail = asymptotic_tail(
            h.asymptotic_coefficients(h.degree_gap + TAIL_TERMS), W_CUT_DIRECT)
        return value + tail
    W = max(W_CUT_DIRECT, 8.0 / math.sqrt(t))
    breaks = half_line_breaks(W, scale=1.0, freq=t)

    def integrand(w):
        return h.values(w) * np.exp(-1j * w * w * t)

    value, _ = adaptive_quad(integrand, breaks, rel_tol=DIRECT_REL_TOL,
                             abs_floor=1e-15)
    return value + oscillatory_tail(h, W, t)


@dataclass(frozen=True)
class PoleTerm:
    """One basis-vector coefficient of the expansion (pole, order k)."""

    pole: ResonancePole
    k: int
    coefficient: complex


@dataclass(frozen=True)
class ExpansionResult:
    """Pole-term/background decomposition of a pairing amplitude.

    ``psi`` caches the observable-side functionals per pole (orders
    0..N-1), so evaluation at any t is closed-form except for the
    background quadrature.  ``completeness_residual`` records
    |pole terms + background - direct amplitude| at t = 0.
    """

    observable: ObservableWave
    state: StateWave
    model: SMatrixModel
    path: DeformedPath
    pole_terms: tuple[PoleTerm, ...]
    psi: tuple[tuple[complex, ...], ...]
    completeness_residual: float


def _pole_in_sector(w_R: complex, theta: float) -> bool:
    a = cmath.phase(w_R)
    return -theta < a < 0.0


def complex_expand(o: ObservableWave, s: StateWave, m: SMatrixModel,
                   path: DeformedPath | None = None) -> ExpansionResult:
    """Extract pole coefficients and the background specification.

    Every model pole must sit strictly inside the deformation sector
    between the real axis and the rotated ray.  An order-N pole yields N
    coefficients (k = 0..N-1) from the Laurent data of S paired with the
    state-side functionals by the Leibniz split of the exact residue.
    """
    if path is None:
        path = DeformedPath()
    terms: list[PoleTerm] = []
    psis: list[tuple[complex, ...]] = []
    for pole in m.poles:
        if not _pole_in_sector(pole.w_R, path.theta):
            raise DeformationError(
                f"pole at {pole.w_R!r} is on or outside the deformation sector "
                f"(theta={path.theta})"
            )
        for root, _ in s.f.poles():
            if abs(root - pole.w_R) < 1e-9:
                raise DeformationError(
                    f"degeneracy clash: state wave pole at {root!r} collides "
                    f"with model pole {pole.w_R!r}"
                )
        for root, _ in reflect(o).poles():
            if abs(root - pole.w_R) < 1e-9:
                raise DeformationError(
                    f"degeneracy clash: reflected observable pole at {root!r} "
                    f"collides with model pole {pole.w_R!r}"
                )
        z = SheetedEnergy(pole.z_R, Sheet.II)
        N = pole.order
        a = {n: m.laurent_at_pole(pole, n) for n in range(1, N + 1)}
        phi = [gamow_functional(s, z, j) for j in range(N)]
        kw = reflect(o)
        psis.append(tuple(energy_functional(kw, z, j) for j in range(N)))
        for k in range(N):
            c_k = -2j * math.pi * sum(a[n] * phi[n - 1 - k]
                                      for n in range(k + 1, N + 1))
            terms.append(PoleTerm(pole, k, complex(c_k)))
    result = ExpansionResult(
        observable=o, state=s, model=m, path=path,
        pole_terms=tuple(terms), psi=tuple(psis),
        completeness_residual=float("nan"),
    )
    pole_sum = _pole_terms_at(result, 0.0)
    residual = abs(sum(pole_sum.values()) + background_amplitude(result, 0.0)
                   - amplitude_direct(o, s, m, 0.0))
    object.__setattr__(result, "completeness_residual", residual)
    return result


def _pole_terms_at(r: ExpansionResult, t: float) -> dict[str, complex]:
    """Closed-form Jordan-evolved pole terms at time t, keyed per (pole, k)."""
    out: dict[str, complex] = {}
    pole_index = {id(p): i for i, p in enumerate(r.model.poles)}
    for term in r.pole_terms:
        i = pole_index[id(term.pole)]
        psi = r.psi[i]
        z = term.pole.z_R
        total = 0j
        coeff = 1.0 + 0j
        for l in range(term.k + 1):
            if l > 0:
                coeff *= (-1j * t) / l
            total += coeff * psi[term.k - l]
        out[f"pole{i}_k{term.k}"] = term.coefficient * cmath.exp(-1j * z * t) * total
    return out


def background_amplitude(r: ExpansionResult, t: float) -> complex:
    """Background integral along the rotated ray at time t.

    On the ray w = s e^{-i theta} the evolution factor becomes
    exp(-i s**2 t cos 2theta) * exp(-s**2 t sin 2theta); at the default
    theta = pi/4 it is purely damped.  At t = 0 the truncated tail is
    restored from the asymptotic expansion of the rational density.
    """
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t < 0:
        raise SemigroupDomainError(f"background evolves for t >= 0 only; got t={t}")
    theta = r.path.theta
    density = spectral_density(r.observable, r.state, r.model)
    phase = cmath.exp(-1j * theta)
    rot2 = cmath.exp(-2j * theta)
    damp = math.sin(2 * theta)
    osc = abs(math.cos(2 * theta))
    if t == 0.0:
        s_cut = r.path.s_max
    else:
        if damp < 1e-6:
            raise ValidationError(
                "background evolution needs theta strictly inside (0, pi/2)"
            )
        s_cut = max(r.path.s_max, 8.0 / math.sqrt(t * damp))

    def integrand(srr):
        w = srr * phase
        return phase * density.values(w) * np.exp(-1j * w * w * t)

    breaks = half_line_breaks(s_cut, scale=1.0, freq=t * osc if t > 0 else 0.0)
    value, _ = adaptive_quad(integrand, breaks, rel_tol=BACKGROUND_REL_TOL,
                             abs_floor=1e-15)
    if t == 0.0:
        value += asymptotic_tail(
            density.asymptotic_coefficients(density.degree_gap + TAIL_TERMS),
            s_cut * phase)
    return value


def amplitude_expanded(r: ExpansionResult, t: float):
    """Total expanded amplitude and its parts at time t.

    Returns (total, parts); parts holds every Jordan pole term plus the
    background.  For simple poles the pole parts reduce to
    b_i e^{-i E_i t} e^{-gamma_i t / 2}.
    """
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t < 0:
        raise SemigroupDomainError(f"amplitude evolves for t >= 0 only; got t={t}")
    parts = _pole_terms_at(r, t)
    parts["background"] = background_amplitude(r, t)
    return sum(parts.values()), parts


def breit_wigner_profile(pole: ResonancePole, E: float) -> float:
    """Lorentzian line shape, unit integral over the full real line.

    Peak value 2/(pi*gamma) at E_R, full width gamma at half maximum.
    """
    g = pole.gamma
    return (g / (2.0 * math.pi)) / ((E - pole.E_R) ** 2 + g * g / 4.0)


@dataclass(frozen=True)
class AmplitudeSeries:
    """Amplitude on a time grid with per-time part breakdowns."""

    times: np.ndarray
    values: np.ndarray
    parts: tuple[dict[str, complex], ...]

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if len(times) == 0 or np.any(times < 0):
            raise ValidationError("time grid must be nonnegative")
        if np.any(np.diff(times) <= 0):
            raise ValidationError("time grid must be strictly increasing")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", np.asarray(self.values, dtype=complex))


def amplitude_series(r: ExpansionResult, times, workers: int = 1) -> AmplitudeSeries:
    """Evaluate the expanded amplitude on a grid.

    Grid points are independent; with workers > 1 they are farmed out to
    a thread pool.  Results are ordered by the grid, so the output is
    identical regardless of worker count.
    """
    times = np.asarray(times, dtype=float)
    if len(times) == 0 or np.any(times < 0):
        raise ValidationError("time grid must be nonnegative")
    if np.any(np.diff(times) <= 0):
        raise ValidationError("time grid must be strictly increasing")

    def one(t):
        return amplitude_expanded(r, float(t))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, times))
    else:
        results = [one(t) for t in times]
    values = np.array([v for v, _ in results], dtype=complex)
    parts = tuple(p for _, p in results)
    return AmplitudeSeries(times=times, values=values, parts=parts)
