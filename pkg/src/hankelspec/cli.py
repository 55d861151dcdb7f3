"""Batch front end: scenario configs in, report files out.

One JSON scenario per file (sweep configs embed a list of scenarios).  All
numeric output is printed with 17 significant digits and no timestamps, so
rerunning an identical config with the same seed reproduces every output
byte for byte.  Exit codes: 0 success, 2 config/validation failure
(diagnostics name the offending field), 3 solver non-convergence (outputs
are still written, flagged).
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, analysis, model, quadrature, symbols
from .eigensolve import dense_spectrum, lanczos_extremes
from .hankel_core import DENSE_LIMIT, HankelTruncation, dense_matrix, matvec

__all__ = ["main", "run_scenario", "ConfigError"]


class ConfigError(ValueError):
    """Invalid scenario config; carries the offending field path."""

    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"config error at '{field}': {message}")


# ---------------------------------------------------------------- parsing


def _need(cfg: dict, field: str, path: str):
    if field not in cfg:
        raise ConfigError(f"{path}{field}", "missing required field")
    return cfg[field]


def _as_float(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    return float(value)


def _as_int(value, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, f"expected an integer, got {value!r}")
    return value


def _as_complex(value, path: str) -> complex:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return complex(value)
    if (
        isinstance(value, list)
        and len(value) == 2
        and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)
    ):
        return complex(value[0], value[1])
    raise ConfigError(path, f"expected a number or [re, im] pair, got {value!r}")


def _wrap_value_error(path: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ValueError as exc:
        raise ConfigError(path, str(exc)) from exc


def parse_discrete_spec(cfg: dict, path: str) -> model.DiscreteSymbolSpec:
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    alpha = _as_float(_need(cfg, "alpha", path + "."), f"{path}.alpha")
    oscs = []
    for i, item in enumerate(cfg.get("oscillations", [])):
        p = f"{path}.oscillations[{i}]"
        if not isinstance(item, dict):
            raise ConfigError(p, "expected an object")
        oscs.append(
            _wrap_value_error(
                p,
                model.Oscillation,
                _as_float(_need(item, "phi", p + "."), p + ".phi"),
                _as_float(_need(item, "psi", p + "."), p + ".psi"),
                _as_float(_need(item, "b", p + "."), p + ".b"),
            )
        )
    pert = None
    if cfg.get("perturbation") is not None:
        pcfg = cfg["perturbation"]
        p = f"{path}.perturbation"
        if not isinstance(pcfg, dict):
            raise ConfigError(p, "expected an object or null")
        pert = _wrap_value_error(
            p,
            model.Perturbation,
            _as_float(_need(pcfg, "scale", p + "."), p + ".scale"),
            _as_float(_need(pcfg, "beta", p + "."), p + ".beta"),
        )
    return _wrap_value_error(
        path,
        model.DiscreteSymbolSpec,
        alpha=alpha,
        b_plus1=_as_float(cfg.get("b_plus1", 0.0), f"{path}.b_plus1"),
        b_minus1=_as_float(cfg.get("b_minus1", 0.0), f"{path}.b_minus1"),
        oscillations=tuple(oscs),
        perturbation=pert,
    )


def parse_continuous_spec(cfg: dict, path: str) -> model.ContinuousKernelSpec:
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    alpha = _as_float(_need(cfg, "alpha", path + "."), f"{path}.alpha")
    oscs = []
    for i, item in enumerate(cfg.get("oscillations", [])):
        p = f"{path}.oscillations[{i}]"
        oscs.append(
            _wrap_value_error(
                p,
                model.KernelOscillation,
                _as_float(_need(item, "rho", p + "."), p + ".rho"),
                _as_float(_need(item, "psi", p + "."), p + ".psi"),
                _as_float(_need(item, "b", p + "."), p + ".b"),
            )
        )
    sings = []
    for i, item in enumerate(cfg.get("local_singularities", [])):
        p = f"{path}.local_singularities[{i}]"
        sings.append(
            _wrap_value_error(
                p,
                model.LocalSingularity,
                _as_float(_need(item, "t0", p + "."), p + ".t0"),
                _as_int(_need(item, "m", p + "."), p + ".m"),
                _as_float(_need(item, "coeff", p + "."), p + ".coeff"),
            )
        )
    kwargs = dict(
        alpha=alpha,
        b_zero=_as_float(cfg.get("b_zero", 0.0), f"{path}.b_zero"),
        b_inf=_as_float(cfg.get("b_inf", 0.0), f"{path}.b_inf"),
        oscillations=tuple(oscs),
        local_singularities=tuple(sings),
    )
    if "cutoffs" in cfg:
        raw = cfg["cutoffs"]
        if not isinstance(raw, list) or len(raw) != 4:
            raise ConfigError(f"{path}.cutoffs", "expected [c1, c2, C1, C2]")
        kwargs["cutoffs"] = tuple(
            _as_float(v, f"{path}.cutoffs[{i}]") for i, v in enumerate(raw)
        )
    return _wrap_value_error(path, model.ContinuousKernelSpec, **kwargs)


_ASLOG_POLYS = (
    "v0_plus", "v0_minus", "v1_plus", "v1_minus",
    "u0_plus", "u0_minus", "u1_plus", "u1_minus",
)


def parse_aslog_spec(cfg: dict, path: str) -> symbols.AsLogSpec:
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    kwargs = {"alpha": _as_float(_need(cfg, "alpha", path + "."), f"{path}.alpha")}
    for name in _ASLOG_POLYS:
        if name in cfg:
            raw = cfg[name]
            if not isinstance(raw, list) or not raw:
                raise ConfigError(f"{path}.{name}", "expected a coefficient list")
            kwargs[name] = tuple(
                _as_complex(v, f"{path}.{name}[{i}]") for i, v in enumerate(raw)
            )
    if "cutoffs" in cfg:
        raw = cfg["cutoffs"]
        if not isinstance(raw, list) or len(raw) != 2:
            raise ConfigError(f"{path}.cutoffs", "expected [c1, c2]")
        kwargs["cutoffs"] = (
            _as_float(raw[0], f"{path}.cutoffs[0]"),
            _as_float(raw[1], f"{path}.cutoffs[1]"),
        )
    return _wrap_value_error(path, symbols.AsLogSpec, **kwargs)


def parse_grid(cfg: dict, path: str) -> quadrature.GridSpec:
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    return _wrap_value_error(
        path,
        quadrature.GridSpec,
        kind=_need(cfg, "kind", path + "."),
        t_min=_as_float(cfg.get("t_min", 1e-12), f"{path}.t_min"),
        t_max=_as_float(_need(cfg, "t_max", path + "."), f"{path}.t_max"),
        points=_as_int(_need(cfg, "points", path + "."), f"{path}.points"),
    )


def parse_solver(cfg, path: str) -> analysis.SolverParams:
    if cfg is None:
        return analysis.SolverParams()
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    return _wrap_value_error(
        path,
        analysis.SolverParams,
        k=_as_int(cfg.get("k", 64), f"{path}.k"),
        tol=_as_float(cfg.get("tol", 1e-8), f"{path}.tol"),
        max_iter=_as_int(cfg.get("max_iter", 2000), f"{path}.max_iter"),
        seed=_as_int(cfg.get("seed", 0), f"{path}.seed"),
        basis_cap=_as_int(cfg.get("basis_cap", 600), f"{path}.basis_cap"),
    )


def parse_fit(cfg, path: str):
    if cfg is None:
        return (8, 32), "plain"
    if not isinstance(cfg, dict):
        raise ConfigError(path, "expected an object")
    window = cfg.get("window", [8, 32])
    if (
        not isinstance(window, list)
        or len(window) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in window)
    ):
        raise ConfigError(f"{path}.window", "expected [n_min, n_max] integers")
    if not (1 <= window[0] <= window[1]):
        raise ConfigError(
            f"{path}.window", f"need 1 <= n_min <= n_max, got {window}"
        )
    mdl = cfg.get("model", "plain")
    if mdl not in ("plain", "log_corrected"):
        raise ConfigError(f"{path}.model", f"expected plain|log_corrected, got {mdl!r}")
    return (window[0], window[1]), mdl


class Scenario:
    """Parsed and validated scenario config."""

    def __init__(self, cfg: dict, path: str = ""):
        if not isinstance(cfg, dict):
            raise ConfigError(path or "<root>", "expected an object")
        self.name = cfg.get("name", "scenario")
        if not isinstance(self.name, str) or not self.name:
            raise ConfigError(f"{path}name", "expected a nonempty string")
        self.kind = _need(cfg, "kind", path)
        if self.kind not in ("discrete", "continuous", "symbol"):
            raise ConfigError(
                f"{path}kind", f"expected discrete|continuous|symbol, got {self.kind!r}"
            )
        self.action = cfg.get("action", "spectrum")
        if self.action not in ("predict", "spectrum", "verify", "symbol"):
            raise ConfigError(
                f"{path}action",
                f"expected predict|spectrum|verify|symbol, got {self.action!r}",
            )
        spec_cfg = _need(cfg, "spec", path)
        if self.kind == "discrete":
            self.spec = parse_discrete_spec(spec_cfg, f"{path}spec")
        elif self.kind == "continuous":
            self.spec = parse_continuous_spec(spec_cfg, f"{path}spec")
        else:
            self.spec = parse_aslog_spec(spec_cfg, f"{path}spec")
        self.solver = parse_solver(cfg.get("solver"), f"{path}solver")
        self.window, self.model = parse_fit(cfg.get("fit"), f"{path}fit")
        self.outputs = cfg.get("outputs", self.name)
        if not isinstance(self.outputs, str):
            raise ConfigError(f"{path}outputs", "expected a directory path string")

        self.N_list = None
        if "N_list" in cfg:
            raw = cfg["N_list"]
            if not isinstance(raw, list) or not raw:
                raise ConfigError(f"{path}N_list", "expected a nonempty list")
            self.N_list = [_as_int(v, f"{path}N_list[{i}]") for i, v in enumerate(raw)]
            for i, N in enumerate(self.N_list):
                if N < 2:
                    raise ConfigError(f"{path}N_list[{i}]", f"order must be >= 2, got {N}")
        self.grids = None
        if "grids" in cfg:
            raw = cfg["grids"]
            if not isinstance(raw, list) or not raw:
                raise ConfigError(f"{path}grids", "expected a nonempty list")
            self.grids = [parse_grid(g, f"{path}grids[{i}]") for i, g in enumerate(raw)]
        self.samples = cfg.get("samples", 2**20)
        if self.kind == "symbol":
            self.samples = _as_int(self.samples, f"{path}samples")
            if self.samples < 2 or self.samples & (self.samples - 1):
                raise ConfigError(
                    f"{path}samples", f"expected a power of two, got {self.samples}"
                )
        jw = cfg.get("j_window", [512, 4096])
        if not isinstance(jw, list) or len(jw) != 2:
            raise ConfigError(f"{path}j_window", "expected [j_min, j_max]")
        self.j_window = (
            _as_int(jw[0], f"{path}j_window[0]"),
            _as_int(jw[1], f"{path}j_window[1]"),
        )
        self.dump_samples = _as_int(
            cfg.get("dump_samples", 4096), f"{path}dump_samples"
        )

        if self.action in ("spectrum", "verify") and self.kind == "discrete":
            if self.N_list is None:
                raise ConfigError(f"{path}N_list", "required for discrete runs")
        if self.action in ("spectrum", "verify") and self.kind == "continuous":
            if self.grids is None:
                raise ConfigError(f"{path}grids", "required for continuous runs")
        if self.action == "spectrum":
            count = len(self.N_list or self.grids or [])
            if self.kind != "symbol" and count != 1:
                raise ConfigError(
                    f"{path}{'N_list' if self.kind == 'discrete' else 'grids'}",
                    f"spectrum runs take exactly one entry, got {count}",
                )


# ------------------------------------------------------------- formatting


def _f(x: float) -> str:
    if isinstance(x, float) and (math.isnan(x) or math.isinf(x)):
        return '"' + repr(x) + '"'
    return format(float(x), ".17g")


def _to_json(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        rows = [
            f'{pad}  "{k}": {_to_json(v, indent + 1)}' for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(rows) + f"\n{pad}}}"
    if isinstance(obj, (list, tuple)):
        seq = list(obj)
        if not seq:
            return "[]"
        flat = all(not isinstance(v, (dict, list, tuple)) for v in seq)
        if flat:
            return "[" + ", ".join(_to_json(v) for v in seq) + "]"
        rows = [f"{pad}  {_to_json(v, indent + 1)}" for v in seq]
        return "[\n" + ",\n".join(rows) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _f(float(obj))
    if isinstance(obj, complex):
        return f"[{_f(obj.real)}, {_f(obj.imag)}]"
    if isinstance(obj, str):
        return '"' + obj.replace("\\", "\\\\").replace('"', '\\"') + '"'
    raise TypeError(f"cannot serialize {type(obj)}")


def _producer(module: str, **params) -> dict:
    return {
        "package": "hankelspec",
        "version": __version__,
        "module": module,
        "parameters": params,
    }


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def _solver_dict(p: analysis.SolverParams) -> dict:
    return {
        "k": p.k, "tol": p.tol, "max_iter": p.max_iter,
        "seed": p.seed, "basis_cap": p.basis_cap,
    }


# ------------------------------------------------------------ pipelines


def _spectrum_csv(S, alpha: float) -> str:
    lines = [
        f"# hankelspec {__version__} spectrum order={S.order} "
        f"solver={S.solver_id} seed={S.seed} tol={_f(S.tol)} "
        f"converged={str(S.converged).lower()}",
        "n,lambda_plus,lambda_minus,scaled_plus,scaled_minus",
    ]
    count = max(len(S.lambda_plus), len(S.lambda_minus))
    for n in range(1, count + 1):
        lp = float(S.lambda_plus[n - 1]) if n <= len(S.lambda_plus) else 0.0
        lm = float(S.lambda_minus[n - 1]) if n <= len(S.lambda_minus) else 0.0
        lines.append(
            f"{n},{_f(lp)},{_f(lm)},{_f(n**alpha * lp)},{_f(n**alpha * lm)}"
        )
    return "\n".join(lines) + "\n"


def _fit_json(fit: analysis.FitReport, solver) -> str:
    doc = {"producer": _producer("analysis", solver=_solver_dict(solver))}
    doc.update(fit.to_dict())
    return _to_json(doc) + "\n"


def _prediction_json(pred) -> str:
    doc = {"producer": _producer("model")}
    doc.update(pred.to_dict())
    return _to_json(doc) + "\n"


def _continuous_spectrum(scenario, grid):
    A = quadrature.build_from_grid(scenario.spec, grid)
    if isinstance(A, HankelTruncation):
        if A.order <= analysis.DENSE_SOLVE_LIMIT:
            return dense_spectrum(dense_matrix(A))
        p = scenario.solver
        return lanczos_extremes(
            lambda v: matvec(A, v), A.order,
            k=p.k, tol=p.tol, max_iter=p.max_iter, seed=p.seed,
            basis_cap=p.basis_cap,
        )
    return dense_spectrum(A)


def _run_predict(scenario, out: Path) -> int:
    if scenario.kind == "discrete":
        pred = model.predict_discrete(scenario.spec)
    elif scenario.kind == "continuous":
        pred = model.predict_continuous(scenario.spec)
    else:
        b = symbols.aslog_coefficient(scenario.spec)
        doc = {
            "producer": _producer("symbols"),
            "alpha": scenario.spec.alpha,
            "b": b,
            "symmetric": scenario.spec.symmetric,
        }
        _write(out / "prediction.json", _to_json(doc) + "\n")
        _write(
            out / "summary.txt",
            f"scenario: {scenario.name}\nkind: symbol\n"
            f"b: {_f(b.real)} + {_f(b.imag)}i\n"
            f"symmetric: {scenario.spec.symmetric}\n",
        )
        return 0
    _write(out / "prediction.json", _prediction_json(pred))
    lines = [
        f"scenario: {scenario.name}",
        f"kind: {scenario.kind}",
        f"alpha: {_f(pred.alpha)}",
        f"a_plus: {_f(pred.a_plus)}",
        f"a_minus: {_f(pred.a_minus)}",
        f"a_singular: {_f(pred.a_singular)}",
    ]
    for label, share_plus, share_minus in pred.terms:
        lines.append(f"term {label}: {_f(share_plus)} / {_f(share_minus)}")
    _write(out / "summary.txt", "\n".join(lines) + "\n")
    return 0


def _run_spectrum(scenario, out: Path) -> int:
    if scenario.kind == "discrete":
        N = scenario.N_list[0]
        S = analysis.discrete_spectrum(scenario.spec, N, scenario.solver)
        pred = model.predict_discrete(scenario.spec)
        label = f"N={N}"
    else:
        grid = scenario.grids[0]
        S = _continuous_spectrum(scenario, grid)
        pred = model.predict_continuous(scenario.spec)
        label = f"grid {grid.kind} M={grid.points}"
    alpha = scenario.spec.alpha
    fit = analysis.fit_coefficient(
        S, alpha, scenario.window, scenario.model, extend_by_zero=True
    )
    _write(out / "spectrum.csv", _spectrum_csv(S, alpha))
    _write(out / "fit.json", _fit_json(fit, scenario.solver))
    _write(out / "prediction.json", _prediction_json(pred))
    lines = [
        f"scenario: {scenario.name}",
        f"kind: {scenario.kind}",
        f"run: {label}",
        f"solver: {S.solver_id} converged={S.converged}",
        f"eigenvalues: {len(S.lambda_plus)} positive, "
        f"{len(S.lambda_minus)} negative, {S.n_dropped} in the zero band",
        f"window: [{scenario.window[0]}, {scenario.window[1]}] model={scenario.model}",
        f"a_hat_plus: {_f(fit.a_hat_plus)} (predicted {_f(pred.a_plus)})",
        f"a_hat_minus: {_f(fit.a_hat_minus)} (predicted {_f(pred.a_minus)})",
        f"drift: {_f(fit.drift)}",
    ]
    _write(out / "summary.txt", "\n".join(lines) + "\n")
    return 0 if S.converged else 3


def _run_verify(scenario, out: Path) -> int:
    alpha = scenario.spec.alpha
    exit_code = 0
    if scenario.kind == "discrete":
        pred = model.predict_discrete(scenario.spec)
        study = analysis.truncation_study(
            scenario.spec, scenario.N_list, scenario.solver,
            scenario.window, scenario.model,
        )
        S_last = analysis.discrete_spectrum(
            scenario.spec, scenario.N_list[-1], scenario.solver
        )
        if not S_last.converged:
            exit_code = 3
        _write(out / "spectrum.csv", _spectrum_csv(S_last, alpha))
        doc = {
            "producer": _producer(
                "analysis", solver=_solver_dict(scenario.solver),
                window=list(scenario.window), model=scenario.model,
            ),
            "N_list": study.N_list,
            "deviations": study.deviations,
            "improving": study.improving,
            "fits": [f.to_dict() for f in study.fits],
        }
        _write(out / "fit.json", _to_json(doc) + "\n")
        _write(out / "prediction.json", _prediction_json(pred))
        lines = [
            f"scenario: {scenario.name}",
            "kind: discrete verify",
            f"N_list: {study.N_list}",
            f"deviations: {[_f(d) for d in study.deviations]}",
            f"improving: {study.improving}",
        ]
        _write(out / "summary.txt", "\n".join(lines) + "\n")
        return exit_code
    pred = model.predict_continuous(scenario.spec)
    report = quadrature.convergence_report(
        scenario.spec, scenario.grids, scenario.window
    )
    doc = {
        "producer": _producer("quadrature", window=list(report.window)),
        "labels": report.labels,
        "changes": report.changes,
        "improving": report.improving,
        "lambda_plus": [list(map(float, t)) for t in report.tables_plus],
        "lambda_minus": [list(map(float, t)) for t in report.tables_minus],
    }
    _write(out / "fit.json", _to_json(doc) + "\n")
    _write(out / "prediction.json", _prediction_json(pred))
    lines = [
        f"scenario: {scenario.name}",
        "kind: continuous verify",
        f"grids: {report.labels}",
        f"changes: {[_f(c) for c in report.changes]}",
        f"improving: {report.improving}",
    ]
    _write(out / "summary.txt", "\n".join(lines) + "\n")
    return exit_code


def _run_symbol(scenario, out: Path) -> int:
    spec = scenario.spec
    samp = symbols.sample_aslog(spec, scenario.samples)
    coeffs = symbols.fourier_coefficients(samp)
    b = symbols.aslog_coefficient(spec)
    b_eff = b.real if spec.symmetric else abs(b)
    j_lo, j_hi = scenario.j_window
    j = np.arange(j_lo, j_hi + 1)
    decay = j * np.log(j) ** spec.alpha
    if spec.symmetric:
        ratio = coeffs[j].real * decay / b_eff
    else:
        ratio = np.abs(coeffs[j]) * decay / b_eff
    stride = max(1, scenario.samples // max(scenario.dump_samples, 1))
    rows = [
        f"# hankelspec {__version__} symbol samples={scenario.samples} stride={stride}",
        "theta,re,im",
    ]
    thetas = 2.0 * np.pi * np.arange(scenario.samples) / scenario.samples
    thetas = np.where(thetas > np.pi, thetas - 2.0 * np.pi, thetas)
    for idx in range(0, scenario.samples, stride):
        rows.append(f"{_f(thetas[idx])},{_f(samp[idx].real)},{_f(samp[idx].imag)}")
    _write(out / "symbol.csv", "\n".join(rows) + "\n")
    doc = {
        "producer": _producer(
            "symbols", samples=scenario.samples, j_window=list(scenario.j_window)
        ),
        "alpha": spec.alpha,
        "b": b,
        "symmetric": spec.symmetric,
        "ratio_median": float(np.median(ratio)),
        "ratio_min": float(np.min(ratio)),
        "ratio_max": float(np.max(ratio)),
    }
    _write(out / "fourier.json", _to_json(doc) + "\n")
    lines = [
        f"scenario: {scenario.name}",
        "kind: symbol",
        f"samples: {scenario.samples}",
        f"b: {_f(b.real)} + {_f(b.imag)}i",
        f"ratio over j in [{j_lo}, {j_hi}]: median {_f(float(np.median(ratio)))}, "
        f"min {_f(float(np.min(ratio)))}, max {_f(float(np.max(ratio)))}",
    ]
    _write(out / "summary.txt", "\n".join(lines) + "\n")
    return 0


def run_scenario(scenario: Scenario, out_root: Path) -> int:
    out = out_root / scenario.outputs
    if scenario.action == "predict":
        return _run_predict(scenario, out)
    if scenario.action == "spectrum":
        return _run_spectrum(scenario, out)
    if scenario.action == "verify":
        return _run_verify(scenario, out)
    return _run_symbol(scenario, out)


# ------------------------------------------------------------------ main


def _load_config(path: str) -> dict:
    import json

    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("<config>", f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("<config>", f"invalid JSON in {path}: {exc}") from exc


def _apply_overrides(cfg: dict, args) -> dict:
    if args.seed is not None:
        solver = dict(cfg.get("solver") or {})
        solver["seed"] = args.seed
        cfg = {**cfg, "solver": solver}
    return cfg


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="hankelspec",
        description="Spectral asymptotics toolkit for Hankel operators",
    )
    parser.add_argument("command", choices=["predict", "spectrum", "verify", "sweep", "symbol"])
    parser.add_argument("--config", required=True, help="scenario config path (JSON)")
    parser.add_argument("--out", default=".", help="output root directory")
    parser.add_argument("--threads", type=int, default=1, help="sweep parallelism")
    parser.add_argument("--seed", type=int, default=None, help="override solver seed")
    args = parser.parse_args(argv)

    try:
        cfg = _load_config(args.config)
        out_root = Path(args.out)
        if args.command == "sweep":
            raw = cfg.get("scenarios")
            if not isinstance(raw, list) or not raw:
                raise ConfigError("scenarios", "sweep config needs a scenario list")
            scenarios = [
                Scenario(_apply_overrides(item, args), f"scenarios[{i}].")
                for i, item in enumerate(raw)
            ]
        else:
            cfg = _apply_overrides(cfg, args)
            cfg.setdefault("action", args.command)
            if cfg["action"] != args.command:
                raise ConfigError(
                    "action", f"config action {cfg['action']!r} does not match "
                    f"the {args.command!r} subcommand"
                )
            scenarios = [Scenario(cfg)]
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    try:
        if args.threads > 1 and len(scenarios) > 1:
            with ThreadPoolExecutor(max_workers=args.threads) as pool:
                codes = list(pool.map(lambda s: run_scenario(s, out_root), scenarios))
        else:
            codes = [run_scenario(s, out_root) for s in scenarios]
    except ConfigError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return 2

    worst = max(codes, default=0)
    for s, code in zip(scenarios, codes):
        status = {0: "ok", 3: "not converged"}.get(code, f"exit {code}")
        print(f"{s.name}: {status}")
    return worst


if __name__ == "__main__":
    sys.exit(main())
