"""Gamow kets as pole functionals, Jordan-block structure, and the
semigroup time evolution with its closed-form matrix.

A decaying ket of order k at an order-N pole is the functional that takes
an observable wave to the order-k energy derivative of its reflected
continuation at z_R on sheet II.  Evolution mixes orders downward with
polynomial-in-t coefficients:

    U(t) pairing of order k  =  e^{-izt} * sum_{l=0..k} (-it)^l/l! * F_{k-l}

for t >= 0 only; growing kets (eigenvalue conj(z_R)) evolve for t <= 0
only.  Negative-domain requests raise SemigroupDomainError, never extend
silently.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import SemigroupDomainError, ValidationError
from .momentum import Sheet, SheetedEnergy
from .smatrix import ResonancePole
from .waves import ObservableWave, StateWave, energy_functional, reflect

MAX_JORDAN_DIM = 6


class Kind(enum.Enum):
    DECAYING = "decaying"
    GROWING = "growing"


@dataclass(frozen=True)
class GamowKet:
    """Order-k Gamow functional attached to a resonance pole.

    kind DECAYING: eigenvalue z_R (Im < 0), lives in the dual of the
    observable space, evolvable for t >= 0.  kind GROWING: eigenvalue
    conj(z_R) (Im > 0), lives in the dual of the state space, evolvable
    for t <= 0.  r_tag is the time-reversal doubling label.
    """

    pole: ResonancePole
    k: int = 0
    kind: Kind = Kind.DECAYING
    r_tag: int = +1

    def __post_init__(self):
        if not (isinstance(self.k, int) and 0 <= self.k < self.pole.order):
            raise ValidationError(
                f"ket order k={self.k} must satisfy 0 <= k < {self.pole.order}"
            )
        if self.r_tag not in (+1, -1):
            raise ValidationError("r_tag must be +1 or -1")
        if not isinstance(self.kind, Kind):
            raise ValidationError("kind must be a Kind member")

    @property
    def eigenvalue(self) -> complex:
        z = self.pole.z_R
        return z if self.kind is Kind.DECAYING else z.conjugate()

    @property
    def energy_point(self) -> SheetedEnergy:
        """Second-sheet energy point where the functional evaluates.

        For growing kets this is conj(z_R); its sheet-II momentum is the
        mirror point -conj(w_R), the upper-half-sheet-II pole of S.
        """
        return SheetedEnergy(self.eigenvalue, Sheet.II)


@dataclass(frozen=True)
class JordanEvolutionMatrix:
    """Closed-form exp(-i t J_N(z)) on an order-N Jordan eigenspace."""

    N: int
    z: complex
    t: float
    entries: np.ndarray

    def __matmul__(self, other):
        if isinstance(other, JordanEvolutionMatrix):
            return self.entries @ other.entries
        return self.entries @ other


def jordan_evolution_matrix(N: int, z: complex, t: float) -> JordanEvolutionMatrix:
    """Lower-triangular Toeplitz evolution matrix on the Jordan eigenspace.

    Entry (k, k-l) is e^{-izt} (-it)^l / l!; the diagonal is e^{-izt}.
    Defined for the forward semigroup only (t >= 0).
    """
    if not (isinstance(N, int) and 1 <= N <= MAX_JORDAN_DIM):
        raise ValidationError(f"Jordan dimension must be 1..{MAX_JORDAN_DIM}, got {N}")
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t < 0:
        raise SemigroupDomainError(
            f"Jordan evolution is a forward semigroup; t={t} < 0 not in its domain"
        )
    phase = cmath.exp(-1j * complex(z) * t)
    entries = np.zeros((N, N), dtype=complex)
    coeff = 1.0 + 0j
    for l in range(N):
        if l > 0:
            coeff *= (-1j * t) / l
        for k in range(l, N):
            entries[k, k - l] = phase * coeff
    return JordanEvolutionMatrix(N, complex(z), float(t), entries)


def _order_functionals(o: ObservableWave, ket: GamowKet, top: int):
    point = ket.energy_point
    kw = reflect(o)
    return [energy_functional(kw, point, j) for j in range(top + 1)]


def evolve_gamow_pairing(o: ObservableWave, ket: GamowKet, t: float) -> complex:
    """Pairing of the forward-evolved decaying ket with an observable.

    Equals the order-k functional of e^{-iEt} times the continued wave;
    the Jordan mixing sum is the closed form of that Leibniz derivative.
    """
    if ket.kind is not Kind.DECAYING:
        raise ValidationError("forward evolution acts on decaying kets only")
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t < 0:
        raise SemigroupDomainError(
            f"decaying kets evolve for t >= 0 only; got t={t}"
        )
    F = _order_functionals(o, ket, ket.k)
    z = ket.eigenvalue
    total = 0j
    coeff = 1.0 + 0j
    for l in range(ket.k + 1):
        if l > 0:
            coeff *= (-1j * t) / l
        total += coeff * F[ket.k - l]
    return cmath.exp(-1j * z * t) * total


def evolve_growing_pairing(s: StateWave, ket: GamowKet, t: float) -> complex:
    """Pairing of the backward-evolved growing ket with a state wave.

    Defined for t <= 0 only; the modulus shrinks into the past like
    e^{+gamma t/2} (growth toward t = 0 from below).
    """
    if ket.kind is not Kind.GROWING:
        raise ValidationError("backward evolution acts on growing kets only")
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t > 0:
        raise SemigroupDomainError(
            f"growing kets evolve for t <= 0 only; got t={t}"
        )
    point = ket.energy_point
    F = [energy_functional(s.f, point, j) for j in range(ket.k + 1)]
    z = ket.eigenvalue
    total = 0j
    coeff = 1.0 + 0j
    for l in range(ket.k + 1):
        if l > 0:
            coeff *= (-1j * t) / l
        total += coeff * F[ket.k - l]
    return cmath.exp(-1j * z * t) * total


def hamiltonian_action(o: ObservableWave, ket: GamowKet) -> complex:
    """Pairing of the Hamiltonian-acted ket: z*F_k + F_{k-1} (F_{-1} = 0).

    Independently computable as the order-k functional of E times the
    continued wave; the two routes agree to rational-algebra exactness.
    """
    F = _order_functionals(o, ket, ket.k)
    lower = F[ket.k - 1] if ket.k >= 1 else 0j
    return ket.eigenvalue * F[ket.k] + lower


def survival_probability(pole: ResonancePole, t: float) -> float:
    """Exponential decay law e^{-gamma t} of the order-0 Gamow state."""
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t < 0:
        raise SemigroupDomainError(
            f"survival probability is defined for t >= 0 only; got t={t}"
        )
    return math.exp(-pole.gamma * t)
