"""Batch front door: scenario configs in, CSV/JSON artifacts out.

Exit codes: 0 success, 1 config/validation error, 2 numerical tolerance
failure, 3 I/O failure.  Every error path emits a single
machine-parsable line ``error[kind]: reason`` on stderr.  Outputs are
byte-identical across repeated runs of the same config: fixed float
formatting (repr round-trip), sorted JSON keys, ordered CSV rows.

The optional GAMOWLAB_THREADS environment variable caps the thread pool
used for independent time-grid points; results do not depend on it.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import corpus
from .dynamics import GamowKet, evolve_gamow_pairing, jordan_evolution_matrix
from .errors import (DeformationError, GamowlabError, NumericsError,
                     SemigroupDomainError, ValidationError)
from .expansion import amplitude_series, complex_expand
from .kaon import TwoLevelConfig, effective_amplitude, exact_amplitude
from .momentum import DeformedPath
from .selftest import DEFAULT_TOLERANCES, run_selftest
from .smatrix import ResonancePole, SMatrixModel
from .symmetry import build_extension, check_relations, spin_rep
from .waves import ObservableWave, StateWave

SCENARIOS = ("decay", "jordan", "expansion", "kaon", "symmetry", "selftest")


# ---------------------------------------------------------------- config

def _as_complex(value, what: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if (isinstance(value, (list, tuple)) and len(value) == 2
            and all(isinstance(v, (int, float)) for v in value)):
        return complex(value[0], value[1])
    raise ValidationError(f"{what} must be a number or [re, im] pair, got {value!r}")


def _coeff_list(values, what: str):
    if not isinstance(values, list) or not values:
        raise ValidationError(f"{what} must be a nonempty coefficient list")
    return np.array([_as_complex(v, what) for v in values], dtype=complex)


class ScenarioConfig:
    """Validated scenario description (one JSON document)."""

    def __init__(self, scenario, model, waves, time_grid, contour,
                 tolerances, output, case_row=None, spin_j=None):
        if scenario not in SCENARIOS:
            raise ValidationError(
                f"scenario must be one of {SCENARIOS}, got {scenario!r}")
        self.scenario = scenario
        self.model = model
        self.waves = waves
        self.time_grid = time_grid
        self.contour = contour
        self.tolerances = tolerances
        self.output = output
        self.case_row = case_row
        self.spin_j = spin_j

    @classmethod
    def from_dict(cls, raw: dict) -> "ScenarioConfig":
        if not isinstance(raw, dict):
            raise ValidationError("config must be a JSON object")
        scenario = raw.get("scenario", "selftest")
        poles = []
        for entry in raw.get("model", []):
            w = complex(entry.get("re_w", 0.0), entry.get("im_w", 0.0))
            poles.append(ResonancePole(w, int(entry.get("order", 1))))
        model = SMatrixModel(poles)
        waves: dict[str, StateWave | ObservableWave] = {}
        for name, entry in raw.get("waves", {}).items():
            role = entry.get("role")
            num = _coeff_list(entry.get("numerator"), f"wave {name} numerator")
            den = _coeff_list(entry.get("denominator"), f"wave {name} denominator")
            if role == "state":
                waves[name] = StateWave(num, den)
            elif role == "observable":
                waves[name] = ObservableWave(num, den)
            else:
                raise ValidationError(
                    f"wave {name} role must be 'state' or 'observable'")
        tg_raw = raw.get("time_grid", {})
        time_grid = {
            "t_max": float(tg_raw.get("t_max", 30.0)),
            "steps": int(tg_raw.get("steps", 61)),
            "spacing": tg_raw.get("spacing", "linear"),
            "t_min": tg_raw.get("t_min"),
        }
        if time_grid["t_max"] < 0 or (time_grid["t_min"] is not None
                                      and time_grid["t_min"] < 0):
            raise ValidationError("time grid must be nonnegative")
        if time_grid["spacing"] not in ("linear", "log"):
            raise ValidationError("time grid spacing must be 'linear' or 'log'")
        if time_grid["steps"] < 2:
            raise ValidationError("time grid needs at least 2 steps")
        ct = raw.get("contour", {})
        contour = DeformedPath(
            theta=float(ct.get("theta", math.pi / 4)),
            s_max=float(ct.get("s_max", 40.0)),
            node_count=int(ct.get("nodes", 64)),
        )
        tolerances = raw.get("tolerances", {})
        if not isinstance(tolerances, dict):
            raise ValidationError("tolerances must be a name -> value map")
        out_raw = raw.get("output", {})
        output = {
            "path": out_raw.get("path"),
            "format": out_raw.get("format", "csv"),
        }
        if output["format"] not in ("csv", "json"):
            raise ValidationError("output format must be 'csv' or 'json'")
        return cls(scenario=scenario, model=model, waves=waves,
                   time_grid=time_grid, contour=contour,
                   tolerances=tolerances, output=output,
                   case_row=raw.get("case_row"), spin_j=raw.get("j"))

    def times(self) -> np.ndarray:
        tg = self.time_grid
        if tg["spacing"] == "linear":
            t_min = 0.0 if tg["t_min"] is None else float(tg["t_min"])
            return np.linspace(t_min, tg["t_max"], tg["steps"])
        t_min = tg["t_min"]
        if t_min is None:
            t_min = tg["t_max"] / 1000.0
        if not t_min > 0:
            raise ValidationError("log spacing needs t_min > 0")
        return np.geomspace(float(t_min), tg["t_max"], tg["steps"])

    def wave_by_role(self, role: str):
        cls = StateWave if role == "state" else ObservableWave
        found = [w for w in self.waves.values() if isinstance(w, cls)]
        if len(found) != 1:
            raise ValidationError(
                f"scenario needs exactly one {role} wave, found {len(found)}")
        return found[0]


def default_config_dict(scenario: str = "selftest") -> dict:
    """Canonical-corpus config for every scenario (used when --config absent)."""
    o, s = corpus.default_wave_pair()

    def coeffs(arr):
        return [[float(c.real), float(c.imag)] for c in arr]

    base_model = [{"re_w": corpus.NARROW_W.real, "im_w": corpus.NARROW_W.imag,
                   "order": 1}]
    if scenario == "jordan":
        base_model = [{"re_w": corpus.NARROW_W.real, "im_w": corpus.NARROW_W.imag,
                       "order": 3}]
    if scenario == "kaon":
        o, s = corpus.kaon_wave_pair()
        base_model = [
            {"re_w": corpus.KAON_S_W.real, "im_w": corpus.KAON_S_W.imag, "order": 1},
            {"re_w": corpus.KAON_L_W.real, "im_w": corpus.KAON_L_W.imag, "order": 1},
        ]
    return {
        "scenario": scenario,
        "model": base_model,
        "waves": {
            "phi": {"role": "state", "numerator": coeffs(s.f.num),
                    "denominator": coeffs(s.f.den)},
            "psi": {"role": "observable", "numerator": coeffs(o.f.num),
                    "denominator": coeffs(o.f.den)},
        },
        "time_grid": {"t_max": 30.0, "steps": 61, "spacing": "linear"},
        "contour": {"theta": math.pi / 4, "s_max": 40.0, "nodes": 64},
        "tolerances": {},
        "output": {"path": None, "format": "csv"},
    }


# ---------------------------------------------------------------- output

def _fmt(x) -> str:
    if isinstance(x, str):
        return x
    return repr(float(x))


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _csv(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    return "\n".join(lines) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _emit(cfg: ScenarioConfig, header, rows, json_obj) -> None:
    path = cfg.output["path"]
    fmt = cfg.output["format"]
    text = _csv(header, rows) if fmt == "csv" else _json_text(json_obj)
    if path is None:
        sys.stdout.write(text)
    else:
        _write_text(path, text)


# ---------------------------------------------------------------- scenarios

def _run_decay(cfg: ScenarioConfig) -> int:
    if not cfg.model.poles:
        raise ValidationError("decay scenario needs at least one model pole")
    pole = cfg.model.poles[0]
    o = cfg.wave_by_role("observable")
    ket = GamowKet(pole)
    F0 = evolve_gamow_pairing(o, ket, 0.0)
    if F0 == 0:
        raise ValidationError("observable wave pairs to zero with this pole")
    rows = []
    worst = 0.0
    for t in cfg.times():
        amp = evolve_gamow_pairing(o, ket, float(t)) / F0
        abs2 = abs(amp) ** 2
        worst = max(worst, abs(abs2 - math.exp(-pole.gamma * t)))
        rows.append([float(t), amp.real, amp.imag, abs2])
    tol = float(cfg.tolerances.get("decay_law", DEFAULT_TOLERANCES["decay_law"]))
    if worst > tol:
        raise NumericsError(f"check decay_law failed: {worst:.3e} > {tol:.3e}")
    header = ["t", "re_amp", "im_amp", "abs2"]
    json_obj = {"scenario": "decay",
                "pole": {"re_w": pole.w_R.real, "im_w": pole.w_R.imag},
                "gamma": pole.gamma,
                "rows": [dict(zip(header, r)) for r in rows]}
    _emit(cfg, header, rows, json_obj)
    return 0


def _run_jordan(cfg: ScenarioConfig) -> int:
    if not cfg.model.poles:
        raise ValidationError("jordan scenario needs a model pole")
    pole = cfg.model.poles[0]
    N = pole.order
    header = ["t"]
    for i in range(N):
        for k in range(N):
            header += [f"re_m{i}{k}", f"im_m{i}{k}"]
    rows = []
    for t in cfg.times():
        U = jordan_evolution_matrix(N, pole.z_R, float(t)).entries
        row = [float(t)]
        for i in range(N):
            for k in range(N):
                row += [U[i, k].real, U[i, k].imag]
        rows.append(row)
    json_obj = {"scenario": "jordan", "N": N,
                "z": [pole.z_R.real, pole.z_R.imag],
                "rows": [dict(zip(header, r)) for r in rows]}
    _emit(cfg, header, rows, json_obj)
    return 0


def _workers() -> int:
    raw = os.environ.get("GAMOWLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValidationError(f"GAMOWLAB_THREADS must be an integer, got {raw!r}")


def _run_expansion(cfg: ScenarioConfig) -> int:
    o = cfg.wave_by_role("observable")
    s = cfg.wave_by_role("state")
    r = complex_expand(o, s, cfg.model, cfg.contour)
    series = amplitude_series(r, cfg.times(), workers=_workers())
    part_names = sorted(series.parts[0])
    header = ["t", "re_total", "im_total"]
    for name in part_names:
        header += [f"re_{name}", f"im_{name}"]
    rows = []
    for t, v, parts in zip(series.times, series.values, series.parts):
        row = [float(t), v.real, v.imag]
        for name in part_names:
            row += [parts[name].real, parts[name].imag]
        rows.append(row)
    json_obj = {"scenario": "expansion",
                "completeness_residual": r.completeness_residual,
                "pole_terms": [
                    {"re_w": pt.pole.w_R.real, "im_w": pt.pole.w_R.imag,
                     "k": pt.k,
                     "coefficient": [pt.coefficient.real, pt.coefficient.imag]}
                    for pt in r.pole_terms],
                "rows": [dict(zip(header, r_)) for r_ in rows]}
    _emit(cfg, header, rows, json_obj)
    return 0


def _run_kaon(cfg: ScenarioConfig) -> int:
    if len(cfg.model.poles) != 2:
        raise ValidationError("kaon scenario needs exactly two model poles")
    p1, p2 = cfg.model.poles
    pole_S, pole_L = (p1, p2) if p1.gamma > p2.gamma else (p2, p1)
    probe = cfg.wave_by_role("observable")
    state = cfg.wave_by_role("state")
    two = TwoLevelConfig.from_waves(pole_S, pole_L, state, probe)
    header = ["t", "re_total", "im_total", "re_L", "im_L", "re_S", "im_S",
              "re_background", "im_background", "re_effective", "im_effective",
              "deficit"]
    rows = []
    for t in cfg.times():
        total, parts = exact_amplitude(two, float(t))
        eff = effective_amplitude(two, float(t))
        rows.append([float(t), total.real, total.imag,
                     parts["L"].real, parts["L"].imag,
                     parts["S"].real, parts["S"].imag,
                     parts["background"].real, parts["background"].imag,
                     eff.real, eff.imag, abs(total - eff)])
    json_obj = {"scenario": "kaon",
                "gamma_S": pole_S.gamma, "gamma_L": pole_L.gamma,
                "b_S": [two.b_S.real, two.b_S.imag],
                "b_L": [two.b_L.real, two.b_L.imag],
                "rows": [dict(zip(header, r_)) for r_ in rows]}
    _emit(cfg, header, rows, json_obj)
    return 0


def _run_symmetry(cfg: ScenarioConfig) -> int:
    rows_requested = [cfg.case_row] if cfg.case_row else [1, 2, 3, 4]
    js = [cfg.spin_j] if cfg.spin_j is not None else [0, 0.5, 1, 1.5]
    reports = []
    for row in rows_requested:
        for j in js:
            case = build_extension(int(row), j)
            report = check_relations(case, spin_rep(j))
            reports.append(report.as_dict())
    all_passed = all(r["passed"] for r in reports)
    json_obj = {"scenario": "symmetry", "reports": reports,
                "passed": all_passed}
    if cfg.output["format"] == "csv":
        header = ["row", "j", "eps_T", "eps_I", "max_deviation", "passed"]
        rows = [[r["row"], r["j"], r["eps_T"], r["eps_I"],
                 max(r["deviations"].values()), 1.0 if r["passed"] else 0.0]
                for r in reports]
        _emit(cfg, header, rows, json_obj)
    else:
        _emit(cfg, [], [], json_obj)
    if not all_passed:
        raise NumericsError("check table1_relations failed in symmetry scenario")
    return 0


def _run_selftest(cfg: ScenarioConfig) -> int:
    tols = {name: float(v) for name, v in cfg.tolerances.items()}
    results = run_selftest(tols)
    for res in results:
        print(res.line())
    json_obj = {"scenario": "selftest",
                "results": [{"name": r.name, "measure": r.measure,
                             "tolerance": r.tolerance, "passed": r.passed}
                            for r in results],
                "passed": all(r.passed for r in results)}
    if cfg.output["path"] is not None:
        if cfg.output["format"] == "csv":
            rows = [[r.name, r.measure, r.tolerance, 1.0 if r.passed else 0.0]
                    for r in results]
            text = _csv(["name", "measure", "tolerance", "passed"], rows)
            _write_text(cfg.output["path"], text)
        else:
            _write_text(cfg.output["path"], _json_text(json_obj))
    failing = [r.name for r in results if not r.passed]
    if failing:
        raise NumericsError(f"check {failing[0]} failed in selftest")
    return 0


_RUNNERS = {
    "decay": _run_decay,
    "jordan": _run_jordan,
    "expansion": _run_expansion,
    "kaon": _run_kaon,
    "symmetry": _run_symmetry,
    "selftest": _run_selftest,
}


# ---------------------------------------------------------------- driver

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gamowlab",
        description="Gamow-resonance numerical laboratory: batch scenarios.")
    parser.add_argument("--config", metavar="PATH",
                        help="JSON scenario config (default: built-in corpus)")
    parser.add_argument("--output", metavar="PATH",
                        help="artifact path (default: config value or stdout)")
    parser.add_argument("--format", choices=("csv", "json"),
                        help="artifact format override")
    parser.add_argument("--scenario", choices=SCENARIOS,
                        help="scenario override")
    parser.add_argument("--tmax", type=float, help="time grid upper end")
    parser.add_argument("--steps", type=int, help="time grid step count")
    parser.add_argument("--case", type=int, dest="case_row",
                        help="extension table row (symmetry scenario)")
    parser.add_argument("--j", type=float, dest="spin_j",
                        help="spin value (symmetry scenario)")
    return parser


def _load_config(args) -> ScenarioConfig:
    if args.config is not None:
        try:
            with open(args.config, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config is not valid JSON: {exc}")
        if args.scenario:
            raw["scenario"] = args.scenario
    else:
        raw = default_config_dict(args.scenario or "selftest")
    cfg = ScenarioConfig.from_dict(raw)
    if args.tmax is not None:
        cfg.time_grid["t_max"] = float(args.tmax)
    if args.steps is not None:
        cfg.time_grid["steps"] = int(args.steps)
    if args.output is not None:
        cfg.output["path"] = args.output
    if args.format is not None:
        cfg.output["format"] = args.format
    if args.case_row is not None:
        cfg.case_row = args.case_row
    if args.spin_j is not None:
        cfg.spin_j = args.spin_j
    return cfg


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
        return _RUNNERS[cfg.scenario](cfg)
    except (ValidationError, DeformationError, SemigroupDomainError) as exc:
        print(f"error[config]: {exc}", file=sys.stderr)
        return 1
    except NumericsError as exc:
        print(f"error[numeric]: {exc}", file=sys.stderr)
        return 2
    except GamowlabError as exc:
        print(f"error[config]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
