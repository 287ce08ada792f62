"""Two-resonance scenario: exact evolution with background versus the
effective two-exponential theory.

The effective theory keeps only the two Gamow exponentials; the exact
amplitude carries the second-sheet background as well, and the difference
between the two IS the background term.  The late-time ratio quantifies
how the power-law background overtakes the faster exponential.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

from .errors import SemigroupDomainError, ValidationError
from .expansion import ExpansionResult, amplitude_expanded, complex_expand
from .momentum import DeformedPath, Sheet, SheetedEnergy
from .smatrix import ResonancePole, SMatrixModel
from .waves import ObservableWave, StateWave, energy_functional, reflect


@dataclass(frozen=True)
class TwoLevelConfig:
    """K_L/K_S-like configuration: two simple poles, wider one labeled S.

    b_S and b_L are the preparation coefficients multiplying the two
    Gamow components.  ``from_waves`` derives them from the complex
    expansion of the prepared state, which makes the exact amplitude
    decompose as effective + background identically; hand-built b values
    are allowed but then only the effective side uses them.
    """

    pole_S: ResonancePole
    pole_L: ResonancePole
    b_S: complex
    b_L: complex
    model: SMatrixModel
    probe: ObservableWave
    state: StateWave
    expansion: ExpansionResult = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.pole_S.gamma > self.pole_L.gamma > 0.0):
            raise ValidationError("need gamma_S > gamma_L > 0")
        if self.pole_S.order != 1 or self.pole_L.order != 1:
            raise ValidationError("two-level poles must be simple (order 1)")
        if not (self.pole_S.E_R > 0.0 and self.pole_L.E_R > 0.0):
            raise ValidationError("resonance energies must be positive")
        model_ws = sorted((p.w_R for p in self.model.poles),
                          key=lambda w: (w.real, w.imag))
        own_ws = sorted((self.pole_S.w_R, self.pole_L.w_R),
                        key=lambda w: (w.real, w.imag))
        if len(model_ws) != 2 or any(abs(a - b) > 1e-12
                                     for a, b in zip(model_ws, own_ws)):
            raise ValidationError("model must contain exactly the S and L poles")
        object.__setattr__(self, "b_S", complex(self.b_S))
        object.__setattr__(self, "b_L", complex(self.b_L))
        object.__setattr__(
            self, "expansion",
            complex_expand(self.probe, self.state, self.model),
        )

    @classmethod
    def from_waves(cls, pole_S: ResonancePole, pole_L: ResonancePole,
                   state: StateWave, probe: ObservableWave,
                   path: DeformedPath | None = None) -> "TwoLevelConfig":
        """Build the config with b_S, b_L taken from the expansion."""
        model = SMatrixModel([pole_S, pole_L])
        expansion = complex_expand(probe, state, model, path)
        coeffs = {}
        for term in expansion.pole_terms:
            coeffs[id(term.pole)] = term.coefficient
        by_w = {p.w_R: coeffs[id(p)] for p in model.poles}
        return cls(pole_S=pole_S, pole_L=pole_L,
                   b_S=by_w[pole_S.w_R], b_L=by_w[pole_L.w_R],
                   model=model, probe=probe, state=state)

    def probe_functional(self, pole: ResonancePole) -> complex:
        """Order-0 Gamow functional of the probe at the pole energy."""
        z = SheetedEnergy(pole.z_R, Sheet.II)
        return energy_functional(reflect(self.probe), z, 0)


def _require_forward(t: float) -> None:
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    if t < 0:
        raise SemigroupDomainError(f"two-level evolution needs t >= 0; got t={t}")


def effective_amplitude(c: TwoLevelConfig, t: float) -> complex:
    """Two-exponential effective theory: b_L F_L e^{-i z_L t} + (S term)."""
    _require_forward(t)
    F_L = c.probe_functional(c.pole_L)
    F_S = c.probe_functional(c.pole_S)
    return (c.b_L * F_L * cmath.exp(-1j * c.pole_L.z_R * t)
            + c.b_S * F_S * cmath.exp(-1j * c.pole_S.z_R * t))


def exact_amplitude(c: TwoLevelConfig, t: float):
    """Exact amplitude with parts {"L", "S", "background"}."""
    _require_forward(t)
    total, raw = amplitude_expanded(c.expansion, t)
    labels = {}
    for i, p in enumerate(c.model.poles):
        name = "S" if abs(p.w_R - c.pole_S.w_R) < 1e-12 else "L"
        labels[f"pole{i}_k0"] = name
    parts = {labels.get(k, k): v for k, v in raw.items()}
    return total, parts


def regeneration_deficit(c: TwoLevelConfig, t: float) -> float:
    """Gap |exact - effective|; equals the background modulus when the
    preparation coefficients come from the expansion."""
    _require_forward(t)
    total, _ = exact_amplitude(c, t)
    return abs(total - effective_amplitude(c, t))


def late_time_ratio(c: TwoLevelConfig, t: float) -> float:
    """|background(t)| over the decayed S-exponential envelope.

    Defined for t >= 5/gamma_S; increasing in t whenever the background
    has power-law decay.
    """
    if not math.isfinite(t):
        raise ValidationError(f"time must be finite, got {t}")
    t_min = 5.0 / c.pole_S.gamma
    if t < t_min:
        raise ValidationError(f"late-time ratio needs t >= 5/gamma_S = {t_min}")
    _, parts = exact_amplitude(c, t)
    F_S = c.probe_functional(c.pole_S)
    envelope = abs(c.b_S * F_S) * math.exp(-0.5 * c.pole_S.gamma * t)
    return abs(parts["background"]) / envelope
