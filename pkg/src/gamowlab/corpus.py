"""Canonical corpus: the fixed referents used by the self-test suite,
the CLI scenario defaults, and the acceptance checks.

Contents: a narrow and a wide single resonance, a two-pole kaon-like
configuration (width ratio exactly 10), an order-2 pole configuration,
and two state/observable wave pairs whose poles keep the deformation
region clear while peaking near the resonance energies.
"""

from __future__ import annotations

import numpy as np

from .smatrix import ResonancePole, SMatrixModel
from .waves import ObservableWave, StateWave

NARROW_W = 1.0 - 0.05j          # z_R = 0.9975 - 0.1j, gamma = 0.2
WIDE_W = 1.0 - 0.3j             # z_R = 0.91 - 0.6j,   gamma = 1.2
KAON_S_W = 1.2 - 0.05j          # gamma_S = 0.24
KAON_L_W = 1.0 - 0.006j         # gamma_L = 0.024 (ratio 10)


def narrow_pole() -> ResonancePole:
    return ResonancePole(NARROW_W)


def wide_pole() -> ResonancePole:
    return ResonancePole(WIDE_W)


def order2_pole() -> ResonancePole:
    return ResonancePole(NARROW_W, order=2)


def kaon_poles() -> tuple[ResonancePole, ResonancePole]:
    """(pole_S, pole_L) with gamma_S / gamma_L = 10 exactly."""
    return ResonancePole(KAON_S_W), ResonancePole(KAON_L_W)


def _conv(*factors):
    out = np.array([1.0 + 0j])
    for fc in factors:
        out = np.convolve(out, np.asarray(fc, dtype=complex))
    return out


def wave_pair_a() -> tuple[ObservableWave, StateWave]:
    """Wave pair peaked near w ~ 1 (the resonance region)."""
    state = StateWave([1.0], _conv([-(0.9 + 0.35j), 1.0], [1.1 + 0.4j, 1.0]))
    observable = ObservableWave(
        [1.0], _conv([-(0.9 - 0.35j), 1.0], [1.1 - 0.4j, 1.0]))
    return observable, state


def wave_pair_b() -> tuple[ObservableWave, StateWave]:
    """Second pair with different pole layout and a nontrivial numerator."""
    state = StateWave(
        [0.5, 1.0],
        _conv([-(1.2 + 0.5j), 1.0], [0.8 + 0.6j, 1.0], [-(-0.5 + 1.0j), 1.0]))
    observable = ObservableWave(
        [0.5, 1.0],
        _conv([-(1.2 - 0.5j), 1.0], [0.8 - 0.6j, 1.0], [-(-0.5 - 1.0j), 1.0]))
    return observable, state


def default_wave_pair() -> tuple[ObservableWave, StateWave]:
    return wave_pair_a()


def kaon_wave_pair() -> tuple[ObservableWave, StateWave]:
    """Probe/state pair peaked between the two kaon-like resonances.

    Both waves carry poles close to the real axis near Re w = 1..1.2, so
    the Gamow components dominate and the background deficit at t = 0
    stays at the permille level.
    """
    peaks = (1.15 + 0.1j, 0.95 + 0.12j)
    state = StateWave([0.05], _conv(*[[-r, 1.0] for r in peaks]))
    probe = ObservableWave([0.05], _conv(*[[-np.conj(r), 1.0] for r in peaks]))
    return probe, state


def corpus_models() -> dict[str, SMatrixModel]:
    s_pole, l_pole = kaon_poles()
    return {
        "narrow": SMatrixModel([narrow_pole()]),
        "wide": SMatrixModel([wide_pole()]),
        "kaon": SMatrixModel([s_pole, l_pole]),
        "order2": SMatrixModel([order2_pole()]),
    }


def corpus_configurations():
    """(name, model, observable, state) across models and wave pairs."""
    o_a, s_a = wave_pair_a()
    o_b, s_b = wave_pair_b()
    out = []
    for name, model in corpus_models().items():
        out.append((name + "/a", model, o_a, s_a))
    out.append(("narrow/b", corpus_models()["narrow"], o_b, s_b))
    return out


def gamma_min(model: SMatrixModel) -> float:
    return min(p.gamma for p in model.poles)


def canonical_two_level():
    """The canonical narrow-resonance two-level configuration."""
    from .kaon import TwoLevelConfig
    s_pole, l_pole = kaon_poles()
    probe, state = kaon_wave_pair()
    return TwoLevelConfig.from_waves(s_pole, l_pole, state, probe)


def broad_probe_two_level():
    """Comparison config with a delocalized probe (larger background share)."""
    from .kaon import TwoLevelConfig
    s_pole, l_pole = kaon_poles()
    probe, state = wave_pair_a()
    return TwoLevelConfig.from_waves(s_pole, l_pole, state, probe)


def tag_waves():
    """Ten waves for the symmetry tag-algebra checks (5 states, 5 observables)."""
    o_a, s_a = wave_pair_a()
    o_b, s_b = wave_pair_b()
    states = [
        s_a,
        s_b,
        StateWave([1.0], _conv([-(0.5 + 0.8j), 1.0], [0.3 + 0.9j, 1.0])),
        StateWave([1.0j], _conv([-(1.5 + 0.2j), 1.0], [2.0 + 0.1j, 1.0])),
        StateWave([0.3, 0.0, 1.0],
                  _conv([-(0.7 + 0.6j), 1.0], [0.9 + 0.3j, 1.0],
                        [-(-1.0 + 0.5j), 1.0], [1.3 + 1.1j, 1.0])),
    ]
    observables = [
        o_a,
        o_b,
        ObservableWave([1.0], _conv([-(0.5 - 0.8j), 1.0], [0.3 - 0.9j, 1.0])),
        ObservableWave([1.0j], _conv([-(1.5 - 0.2j), 1.0], [2.0 - 0.1j, 1.0])),
        ObservableWave([0.3, 0.0, 1.0],
                       _conv([-(0.7 - 0.6j), 1.0], [0.9 - 0.3j, 1.0],
                             [-(-1.0 - 0.5j), 1.0], [1.3 - 1.1j, 1.0])),
    ]
    return states + observables
