"""Named invariant checks over the canonical corpus.

Each check computes a scalar measure (a max deviation, or a max
monotonicity violation) and compares it against a named tolerance; the
CLI selftest runs all of them and fails with the first offending name.
Tolerances can be overridden per name, which is also how a forced
failure is staged in tests.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import corpus
from .dynamics import GamowKet, evolve_gamow_pairing, hamiltonian_action, \
    jordan_evolution_matrix
from .expansion import (amplitude_direct, amplitude_expanded,
                        background_amplitude, complex_expand)
from .kaon import effective_amplitude, exact_amplitude, late_time_ratio
from .momentum import (DeformedPath, MomentumPoint, energy_of, momentum_of,
                       sample_path)
from .rational import RationalFunction, differentiate
from .smatrix import ResonancePole
from .symmetry import (TaggedWave, build_extension, check_relations, spin_rep,
                       reciprocity_check, transform_ket)
from .waves import StateWave, energy_functional, reflect

DEFAULT_TOLERANCES: dict[str, float] = {
    "momentum_roundtrip": 1e-14,
    "path_weight_exactness": 1e-13,
    "rational_leibniz": 1e-11,
    "residue_sum": 1e-10,
    "smatrix_unimodularity": 1e-12,
    "smatrix_mirror": 1e-11,
    "jordan_oracle": 1e-10,
    "jordan_semigroup": 1e-11,
    "decay_law": 1e-12,
    "hamiltonian_chain": 1e-12,
    "expansion_completeness": 1e-7,
    "oracle_equivalence": 1e-6,
    "background_subexponential": 0.0,
    "background_power_stability": 0.1,
    "kaon_decomposition": 1e-12,
    "kaon_late_time": 0.0,
    "table1_relations": 1e-12,
    "reciprocity": 1e-10,
    "tag_algebra": 1e-12,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    measure: float
    tolerance: float
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"[{status}] {self.name}: measure={self.measure:.3e} "
                f"tolerance={self.tolerance:.3e} {self.detail}".rstrip())


def _matrix_exp(M, ntaylor=24):
    norm = float(np.max(np.sum(np.abs(M), axis=1)))
    nsquare = 0
    if norm > 0.25:
        nsquare = int(math.ceil(math.log2(norm))) + 2
    SM = M / 2.0 ** nsquare
    EM = np.eye(M.shape[0], dtype=complex)
    term = np.eye(M.shape[0], dtype=complex)
    for i in range(1, ntaylor + 1):
        term = term @ SM / i
        EM = EM + term
    for _ in range(nsquare):
        EM = EM @ EM
    return EM


def _check_momentum_roundtrip() -> tuple[float, str]:
    rng = np.random.RandomState(11)
    worst = 0.0
    for _ in range(200):
        w = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
        if abs(w.imag) < 1e-3:
            continue
        back = momentum_of(energy_of(MomentumPoint(w))).w
        worst = max(worst, abs(back - w) / abs(w))
    return worst, "momentum_of(energy_of(w)) = w"


def _check_path_weights() -> tuple[float, str]:
    path = DeformedPath(theta=math.pi / 3, s_max=2.5, node_count=48)
    nodes = sample_path(path)
    end = path.s_max * cmath.exp(-1j * path.theta)
    worst = 0.0
    for k in range(0, 12):
        total = sum(wt * (pt.w ** k) for pt, wt in nodes)
        exact = end ** (k + 1) / (k + 1)
        worst = max(worst, abs(total - exact) / abs(exact))
    return worst, "Gauss-Legendre path weights integrate powers exactly"


def _check_rational_leibniz() -> tuple[float, str]:
    rng = np.random.RandomState(5)
    f = RationalFunction([1.0, 0.5j], [2.0 + 1j, 0.3, 1.0])
    g = RationalFunction([0.7, 1.0], [-1.5 + 2j, 1.0])
    lhs = differentiate(f * g, 1)
    rhs = differentiate(f, 1) * g + f * differentiate(g, 1)
    worst = 0.0
    for _ in range(20):
        w = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        try:
            a, b = lhs.evaluate(w), rhs.evaluate(w)
        except Exception:
            continue
        worst = max(worst, abs(a - b) / max(abs(a), 1e-30))
    return worst, "(fg)' = f'g + fg' at random points"


def _check_residue_sum() -> tuple[float, str]:
    from .rational import laurent_coefficient
    worst = 0.0
    for name, model, o, s in corpus.corpus_configurations():
        from .expansion import spectral_density
        h = spectral_density(o, s, model)
        total = sum(laurent_coefficient(h, root, 1) for root, _ in h.poles())
        scale = max(abs(c) for c in h.num) + 1.0
        worst = max(worst, abs(total) / scale)
    return worst, "residues of decaying rational densities sum to zero"


def _check_unimodularity() -> tuple[float, str]:
    w = np.linspace(1e-3, 4.0, 200)
    worst = 0.0
    for model in corpus.corpus_models().values():
        sv = model.s_values(w)
        worst = max(worst, float(np.max(np.abs(np.abs(sv) - 1.0))))
    return worst, "|S| = 1 on the real momentum axis"


def _check_mirror() -> tuple[float, str]:
    rng = np.random.RandomState(23)
    pts = rng.uniform(-2, 2, 200) + 1j * rng.uniform(-2, 2, 200)
    worst = 0.0
    for model in corpus.corpus_models().values():
        vals = model.s_values(pts) * model.s_values(-pts)
        worst = max(worst, float(np.max(np.abs(vals - 1.0))))
    return worst, "S(w) S(-w) = 1"


def _check_jordan_oracle() -> tuple[float, str]:
    rng = np.random.RandomState(7)
    worst = 0.0
    for N in range(1, 7):
        for _ in range(10):
            z = complex(rng.uniform(-10, 10), rng.uniform(-10, 0))
            t = rng.uniform(0.0, 50.0)
            J = z * np.eye(N) + np.diag(np.ones(N - 1), -1)
            U = jordan_evolution_matrix(N, z, t).entries
            Uo = _matrix_exp(-1j * t * J)
            worst = max(worst, float(np.max(np.abs(U - Uo)) / np.max(np.abs(Uo))))
    return worst, "closed form equals generic matrix exponential"


def _check_jordan_semigroup() -> tuple[float, str]:
    rng = np.random.RandomState(31)
    worst = 0.0
    for _ in range(50):
        N = int(rng.randint(1, 7))
        z = complex(rng.uniform(-5, 5), rng.uniform(-5, 0))
        t1, t2 = rng.uniform(0, 20), rng.uniform(0, 20)
        U1 = jordan_evolution_matrix(N, z, t1).entries
        U2 = jordan_evolution_matrix(N, z, t2).entries
        U12 = jordan_evolution_matrix(N, z, t1 + t2).entries
        scale = float(np.max(np.abs(U12)))
        worst = max(worst, float(np.max(np.abs(U1 @ U2 - U12)) / scale))
    return worst, "U(t1) U(t2) = U(t1 + t2)"


def _check_decay_law() -> tuple[float, str]:
    o, _ = corpus.wave_pair_a()
    worst = 0.0
    for pole in (corpus.narrow_pole(), corpus.wide_pole()):
        ket = GamowKet(pole)
        F0 = evolve_gamow_pairing(o, ket, 0.0)
        for t in np.linspace(0.0, 40.0 / pole.gamma, 40):
            amp = evolve_gamow_pairing(o, ket, float(t))
            worst = max(worst, abs(abs(amp / F0) ** 2 - math.exp(-pole.gamma * t)))
    return worst, "|amplitude|^2 follows exp(-gamma t)"


def _check_hamiltonian_chain() -> tuple[float, str]:
    o, _ = corpus.wave_pair_a()
    wsq = RationalFunction(np.array([0.0, 0.0, 1.0], dtype=complex))
    kw = reflect(o)
    worst = 0.0
    for pole in (corpus.order2_pole(), ResonancePole(corpus.NARROW_W, order=4)):
        for k in range(pole.order):
            ket = GamowKet(pole, k=k)
            route1 = hamiltonian_action(o, ket)
            route2 = energy_functional(wsq * kw, ket.energy_point, k)
            worst = max(worst, abs(route1 - route2) / max(abs(route1), 1e-30))
    return worst, "z F_k + F_{k-1} equals the functional of E * wave"


def _check_completeness() -> tuple[float, str]:
    worst = 0.0
    for name, model, o, s in corpus.corpus_configurations():
        r = complex_expand(o, s, model)
        a0 = amplitude_direct(o, s, model, 0.0)
        worst = max(worst, r.completeness_residual / abs(a0))
    return worst, "pole terms + background reproduce the t=0 amplitude"


def _check_oracle_equivalence() -> tuple[float, str]:
    worst = 0.0
    for name, model, o, s in corpus.corpus_configurations():
        r = complex_expand(o, s, model)
        for t in (0.0, 1.0, 5.0, 20.0):
            direct = amplitude_direct(o, s, model, t)
            total, _ = amplitude_expanded(r, t)
            worst = max(worst, abs(direct - total) / abs(direct))
    return worst, "expanded amplitude equals direct quadrature"


def _check_subexponential() -> tuple[float, str]:
    worst = -1.0
    for name, model, o, s in corpus.corpus_configurations():
        r = complex_expand(o, s, model)
        gmin = corpus.gamma_min(model)
        ts = np.geomspace(5.0 / gmin, 50.0 / gmin, 20)
        env = [abs(background_amplitude(r, float(t))) * math.exp(gmin * t / 2)
               for t in ts]
        drops = [(env[i] - env[i + 1]) / env[i] for i in range(len(env) - 1)]
        worst = max(worst, max(drops))
    return worst, "exp(gamma_min t/2) |bg(t)| increases (max drop <= 0)"


def _check_power_stability() -> tuple[float, str]:
    worst = 0.0
    for name, model, o, s in corpus.corpus_configurations():
        r = complex_expand(o, s, model)
        gmin = corpus.gamma_min(model)
        t_hi = 50.0 / gmin
        ts1 = np.geomspace(t_hi / 10.0, t_hi / math.sqrt(10.0), 8)
        ts2 = np.geomspace(t_hi / math.sqrt(10.0), t_hi, 8)

        def fit_q(ts):
            ys = [math.log(abs(background_amplitude(r, float(t)))) for t in ts]
            xs = [math.log(t) for t in ts]
            A = np.vstack([xs, np.ones(len(xs))]).T
            slope, _ = np.linalg.lstsq(A, np.array(ys), rcond=None)[0]
            return -slope

        q1, q2 = fit_q(ts1), fit_q(ts2)
        worst = max(worst, abs(q1 - q2) / max(abs(q1), abs(q2)))
    return worst, "fitted power-law exponent stable over the last decade"


def _check_kaon() -> tuple[float, str]:
    cfg = corpus.canonical_two_level()
    worst = 0.0
    for t in (0.0, 2.0, 9.0, 30.0):
        total, parts = exact_amplitude(cfg, t)
        eff = effective_amplitude(cfg, t)
        scale = max(abs(total), 1e-30)
        worst = max(worst, abs(total - (eff + parts["background"])) / scale)
    return worst, "exact = effective + background"


def _check_kaon_late_time() -> tuple[float, str]:
    cfg = corpus.canonical_two_level()
    gS = cfg.pole_S.gamma
    ratios = [late_time_ratio(cfg, t / gS) for t in (10.0, 20.0, 40.0)]
    worst = max(ratios[0] - ratios[1], ratios[1] - ratios[2])
    return worst, "late-time ratio strictly increasing (max non-increase <= 0)"


def _check_table1() -> tuple[float, str]:
    worst = 0.0
    for row in (1, 2, 3, 4):
        for j in (0, 0.5, 1, 1.5):
            case = build_extension(row, j)
            report = check_relations(case, spin_rep(j))
            worst = max(worst, max(report.deviations.values()))
    return worst, "all Table-1 relations across rows and spins"


def _check_reciprocity() -> tuple[float, str]:
    worst = 0.0
    for model in corpus.corpus_models().values():
        for E in np.linspace(0.2, 3.0, 20):
            report = reciprocity_check(model, float(E))
            if report.deviation_by_r[+1] != report.deviation_by_r[-1]:
                worst = max(worst, 1.0)
            worst = max(worst, report.deviation_by_r[+1],
                        report.off_diagonal_leak)
    return worst, "in-route equals out-route times S(E), per r sector"


def _check_tag_algebra() -> tuple[float, str]:
    row4 = build_extension(4, 0.5)
    row1 = build_extension(1, 0.5)
    worst = 0.0
    for wave in corpus.tag_waves():
        is_state = isinstance(wave, StateWave)
        tagged = TaggedWave(wave=wave, r=+1)
        once = transform_ket(row4, tagged)
        if isinstance(once.wave, StateWave) == is_state or once.r != -1:
            worst = max(worst, 1.0)
        twice = transform_ket(row4, once)
        back = twice.wave.f
        expect = row4.eps_T * wave.f
        dev = float(np.max(np.abs(
            np.polynomial.polynomial.polysub(back.num, expect.num))))
        dev = max(dev, float(np.max(np.abs(
            np.polynomial.polynomial.polysub(back.den, expect.den)))))
        worst = max(worst, dev, abs(twice.r - tagged.r))
        plain = transform_ket(row1, TaggedWave(wave=wave, r=None))
        if isinstance(plain.wave, StateWave) == is_state or plain.r is not None:
            worst = max(worst, 1.0)
    return worst, "row-4 doubling flips (space, r); double application = eps_T"


_CHECKS = {
    "momentum_roundtrip": _check_momentum_roundtrip,
    "path_weight_exactness": _check_path_weights,
    "rational_leibniz": _check_rational_leibniz,
    "residue_sum": _check_residue_sum,
    "smatrix_unimodularity": _check_unimodularity,
    "smatrix_mirror": _check_mirror,
    "jordan_oracle": _check_jordan_oracle,
    "jordan_semigroup": _check_jordan_semigroup,
    "decay_law": _check_decay_law,
    "hamiltonian_chain": _check_hamiltonian_chain,
    "expansion_completeness": _check_completeness,
    "oracle_equivalence": _check_oracle_equivalence,
    "background_subexponential": _check_subexponential,
    "background_power_stability": _check_power_stability,
    "kaon_decomposition": _check_kaon,
    "kaon_late_time": _check_kaon_late_time,
    "table1_relations": _check_table1,
    "reciprocity": _check_reciprocity,
    "tag_algebra": _check_tag_algebra,
}


def run_selftest(tolerances: dict[str, float] | None = None) -> list[CheckResult]:
    """Run every named check; returns results in fixed order."""
    tols = dict(DEFAULT_TOLERANCES)
    if tolerances:
        unknown = set(tolerances) - set(tols)
        if unknown:
            from .errors import ValidationError
            raise ValidationError(f"unknown tolerance names: {sorted(unknown)}")
        tols.update(tolerances)
    results = []
    for name, fn in _CHECKS.items():
        measure, detail = fn()
        tol = tols[name]
        results.append(CheckResult(name=name, measure=float(measure),
                                   tolerance=float(tol),
                                   passed=bool(measure <= tol), detail=detail))
    return results
