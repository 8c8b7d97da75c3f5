"""Command-line front end.

Subcommands
-----------

verify
    Run the named identity checks for a model and write a report.
    Exit code 0 when every check passes, 1 when any fails (failing names
    go to stderr), 2 on configuration errors.
spectrum
    Emit the (m, n, E_m - E_n) eigenvalue table, the multiplicity
    histogram, and (for the anharmonic model) the spacing-frequency flag.
expand
    Expand an operand over the eigen-matrix families and report the
    coefficient table and residuals.
export
    Dump the model matrices and spectrum.

Reports are JSON by default (CSV is a flat projection of the main
table).  Matrices serialize as row-major arrays of [re, im] pairs,
matching the vectorizer layout.  With ``--no-timings`` a report is
byte-identical across runs of the same configuration and seed.

Configuration may come from a JSON file (``--config``) using the same
field names as the flags (dashes replaced by underscores); explicit
flags override file values.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import tempfile
import time
from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from .checks import CheckResult, all_passed, failing_names, run_verification
from .errors import ToolkitError
from .metric import identity_metric
from .models import (
    OscillatorSpec,
    PATH_ANALYTIC,
    PATH_EXACT,
    SwansonSpec,
    build_hermitian_reference,
    build_ho,
    classify_spacing,
    swanson_model,
    swanson_scalars,
    swanson_spectrum,
)
from .prng import SplitMix64
from .spectral import build_liouville_spectrum, expand_operator, solve_quasi_hermitian

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG_ERROR = 2


@dataclass
class RunConfig:
    """One run's parameters; field names are frozen in the README."""

    model: str = "ho"
    N: int = 8
    omega: float = 1.0
    alpha: float = 0.0
    beta: float = 0.0
    z: float = 0.0
    mass: float = 1.0
    hbar: float = 1.0
    ell: float = 0.0          # 0 means the reference length sqrt(hbar/(mass*omega))
    path: str = PATH_EXACT
    tol_sym: float = 1e-10
    tol_pd: float = 1e-12
    tol_exp: float = 1e-10
    seed: int = 20240
    output: Optional[str] = None
    format: str = "json"
    no_timings: bool = False

    def validate(self):
        if self.model not in ("ho", "swanson"):
            raise ToolkitError(f"unknown model {self.model!r}")
        if self.N < 2:
            raise ToolkitError(f"N must be >= 2, got {self.N}")
        if self.path not in (PATH_ANALYTIC, PATH_EXACT):
            raise ToolkitError(f"path must be 'analytic' or 'exact', got {self.path!r}")
        for name in ("tol_sym", "tol_pd", "tol_exp"):
            if getattr(self, name) <= 0:
                raise ToolkitError(f"{name} must be positive")
        if self.format not in ("json", "csv"):
            raise ToolkitError(f"format must be 'json' or 'csv', got {self.format!r}")


class _Model:
    """Resolved model: Hamiltonian, metric, spectrum and scalars."""

    def __init__(self, config: RunConfig):
        self.config = config
        if config.model == "ho":
            spec = OscillatorSpec(
                n_dim=config.N, omega=config.omega, mass=config.mass, hbar=config.hbar
            )
            self.hamiltonian = build_ho(spec)
            self.metric = identity_metric(config.N)
            self.eigenvalues = np.diag(self.hamiltonian).real.copy()
            self.scalars = {
                "Omega": config.omega,
                "Minv": 1.0 / config.mass,
                "c": 0.0,
                "cond_eta": 1.0,
            }
            self.swanson_spec = None
        else:
            spec = SwansonSpec(
                n_dim=config.N, omega=config.omega, alpha=config.alpha,
                beta=config.beta, z=config.z, mass=config.mass, hbar=config.hbar,
                ell=config.ell if config.ell > 0 else 0.0, path=config.path,
            )
            omega_ref, minv, c = swanson_scalars(spec)
            self.hamiltonian, self.metric = swanson_model(spec)
            self.eigenvalues = swanson_spectrum(spec)
            self.scalars = {
                "Omega": omega_ref,
                "Minv": minv,
                "c": c,
                "cond_eta": self.metric.condition_number,
            }
            self.swanson_spec = spec

    @property
    def is_analytic(self) -> bool:
        return self.config.model == "swanson" and self.config.path == PATH_ANALYTIC


def _matrix_payload(M) -> list:
    """Row-major nested lists of [re, im] pairs."""
    M = np.asarray(M, dtype=complex)
    return [[[float(x.real), float(x.imag)] for x in row] for row in M]


def _parse_operand(text: str, n: int, seed: int) -> np.ndarray:
    """Operand grammar: 'E:m,n' basis unit, 'random', '@file.json', or inline JSON."""
    if text.startswith("E:"):
        try:
            m, k = (int(part) for part in text[2:].split(","))
        except ValueError as exc:
            raise ToolkitError(f"bad basis-element operand {text!r}") from exc
        if not (0 <= m < n and 0 <= k < n):
            raise ToolkitError(f"basis indices ({m},{k}) outside dimension {n}")
        A = np.zeros((n, n), dtype=complex)
        A[m, k] = 1.0
        return A
    if text == "random":
        return SplitMix64(seed).complex_matrix(n)
    if text.startswith("@"):
        with open(text[1:], "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    else:
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ToolkitError(f"operand is not valid JSON: {exc}") from exc
    try:
        A = np.array(
            [[complex(entry[0], entry[1]) for entry in row] for row in payload]
        )
    except (TypeError, IndexError) as exc:
        raise ToolkitError(
            "inline operand must be a row-major matrix of [re, im] pairs"
        ) from exc
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ToolkitError(f"operand must be square, got shape {A.shape}")
    if A.shape[0] != n:
        raise ToolkitError(f"operand dimension {A.shape[0]} does not match N = {n}")
    return A


def _base_report(config: RunConfig, model: _Model) -> dict:
    return {
        "model": config.model,
        "N": config.N,
        "omega": config.omega,
        "alpha": config.alpha,
        "beta": config.beta,
        "z": config.z,
        "mass": config.mass,
        "hbar": config.hbar,
        "ell": config.ell if config.ell > 0
        else float(np.sqrt(config.hbar / (config.mass * config.omega))),
        "path": config.path,
        "seed": config.seed,
        "tolerances": {
            "sym": config.tol_sym, "pd": config.tol_pd, "expansion": config.tol_exp,
        },
        "scalars": model.scalars,
    }


def _check_rows(results: List[CheckResult]) -> list:
    rows = []
    for r in results:
        rows.append({
            "name": r.name,
            "value": r.value,
            "tolerance": r.tolerance,
            "pass": r.passed,
            "note": r.note,
        })
    return rows


def _spectrum_rows(eigenvalues: np.ndarray) -> list:
    n = eigenvalues.size
    rows = []
    for m in range(n):
        for k in range(n):
            rows.append((float(eigenvalues[m] - eigenvalues[k]), m, k))
    rows.sort()
    return [{"m": m, "n": k, "eigenvalue": value} for value, m, k in rows]


def _multiplicities(eigenvalues: np.ndarray, decimals=9) -> list:
    n = eigenvalues.size
    diffs = (eigenvalues[:, None] - eigenvalues[None, :]).reshape(-1)
    values, counts = np.unique(np.round(diffs, decimals), return_counts=True)
    return [
        {"eigenvalue": float(v), "multiplicity": int(c)}
        for v, c in zip(values, counts)
    ]


def _render_csv(report: dict) -> str:
    lines = []
    if "checks" in report:
        lines.append("name,value,tolerance,pass")
        for row in report["checks"]:
            value = "" if row["value"] is None else repr(row["value"])
            tol = "" if row["tolerance"] is None else repr(row["tolerance"])
            lines.append(f"{row['name']},{value},{tol},{str(row['pass']).lower()}")
    elif "coefficients" in report:
        lines.append("m,n,re,im")
        for row in report["coefficients"]:
            lines.append(f"{row['m']},{row['n']},{row['re']!r},{row['im']!r}")
    elif "spectrum" in report:
        lines.append("m,n,eigenvalue")
        for row in report["spectrum"]:
            lines.append(f"{row['m']},{row['n']},{row['eigenvalue']!r}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, config: RunConfig):
    if config.format == "csv":
        text = _render_csv(report)
    else:
        text = json.dumps(report, indent=2) + "\n"
    if config.output:
        directory = os.path.dirname(os.path.abspath(config.output))
        fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
            os.replace(tmp_path, config.output)
        except BaseException:
            if os.path.exists(tmp_path):
                os.unlink(tmp_path)
            raise
    else:
        sys.stdout.write(text)


def _cmd_verify(config: RunConfig) -> int:
    started = time.perf_counter()
    model = _Model(config)
    results = run_verification(
        model.hamiltonian,
        model.metric,
        path=config.path if config.model == "swanson" else PATH_EXACT,
        seed=config.seed,
        tol_expansion=config.tol_exp,
    )
    report = _base_report(config, model)
    report["checks"] = _check_rows(results)
    if not config.no_timings:
        report["timings"] = {"total_s": time.perf_counter() - started}
    _emit(report, config)
    if not all_passed(results):
        print("failed checks: " + ", ".join(failing_names(results)), file=sys.stderr)
        return EXIT_CHECK_FAILURE
    return EXIT_OK


def _cmd_spectrum(config: RunConfig) -> int:
    started = time.perf_counter()
    model = _Model(config)
    report = _base_report(config, model)
    report["spectrum"] = _spectrum_rows(model.eigenvalues)
    report["multiplicities"] = _multiplicities(model.eigenvalues)
    if model.swanson_spec is not None:
        window = min(model.swanson_spec.n_dim - 1, max(1, model.swanson_spec.n_dim // 4))
        flag, dev_ref, dev_bare = classify_spacing(
            model.eigenvalues, model.swanson_spec, window
        )
        report["spacing_match"] = flag
        report["spacing_deviation_Omega"] = dev_ref
        report["spacing_deviation_omega"] = dev_bare
    if not config.no_timings:
        report["timings"] = {"total_s": time.perf_counter() - started}
    _emit(report, config)
    return EXIT_OK


def _cmd_expand(config: RunConfig, operand_text: str) -> int:
    started = time.perf_counter()
    model = _Model(config)
    operand = _parse_operand(operand_text, config.N, config.seed)
    # The expansion needs the strict pipeline; gate errors surface as
    # configuration errors because the chosen model cannot support it.
    system = solve_quasi_hermitian(model.hamiltonian, model.metric)
    spectrum = build_liouville_spectrum(system)
    result = expand_operator(spectrum, operand)
    report = _base_report(config, model)
    coeff_rows = []
    for m in range(config.N):
        for k in range(config.N):
            value = result.coefficients[m, k]
            coeff_rows.append({
                "m": m, "n": k,
                "re": float(value.real), "im": float(value.imag),
            })
    report["coefficients"] = coeff_rows
    report["residuals"] = {
        "reconstruction": result.reconstruction_residual,
        "action_expansion": result.action_residual,
        "completeness": result.completeness_residual,
    }
    report["condition_flag"] = result.condition_flag
    if not config.no_timings:
        report["timings"] = {"total_s": time.perf_counter() - started}
    _emit(report, config)
    return EXIT_OK


def _cmd_export(config: RunConfig) -> int:
    started = time.perf_counter()
    model = _Model(config)
    report = _base_report(config, model)
    matrices = {"H": _matrix_payload(model.hamiltonian)}
    if config.model == "swanson":
        matrices["eta"] = _matrix_payload(model.metric.eta)
        matrices["rho"] = _matrix_payload(model.metric.rho)
        if config.path == PATH_EXACT:
            matrices["h_ref"] = _matrix_payload(
                build_hermitian_reference(model.swanson_spec)
            )
    report["matrices"] = matrices
    report["eigenvalues"] = [float(v) for v in model.eigenvalues]
    if not config.no_timings:
        report["timings"] = {"total_s": time.perf_counter() - started}
    _emit(report, config)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qliouville",
        description="Spectral toolkit for metric-intertwined Liouvillians.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "run the identity check suite"),
        ("spectrum", "emit the Liouvillian eigenvalue table"),
        ("expand", "expand an operand over the eigen-matrix family"),
        ("export", "dump model matrices and spectrum"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", type=str, default=None,
                       help="JSON file with the same field names as the flags")
        p.add_argument("--model", choices=("ho", "swanson"))
        p.add_argument("--N", type=int)
        p.add_argument("--omega", type=float)
        p.add_argument("--alpha", type=float)
        p.add_argument("--beta", type=float)
        p.add_argument("--z", type=float)
        p.add_argument("--mass", type=float)
        p.add_argument("--hbar", type=float)
        p.add_argument("--ell", type=float)
        p.add_argument("--path", choices=(PATH_ANALYTIC, PATH_EXACT))
        p.add_argument("--tol-sym", dest="tol_sym", type=float)
        p.add_argument("--tol-pd", dest="tol_pd", type=float)
        p.add_argument("--tol-exp", dest="tol_exp", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--output", type=str)
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--no-timings", dest="no_timings", action="store_true",
                       default=None)
        if name == "expand":
            p.add_argument("--operand", type=str, required=True,
                           help="'E:m,n', 'random', '@file.json', or inline JSON")
    return parser


def _load_config(args: argparse.Namespace) -> RunConfig:
    values = {}
    if args.config:
        with open(args.config, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        known = {f.name for f in dataclasses.fields(RunConfig)}
        unknown = set(payload) - known
        if unknown:
            raise ToolkitError(f"unknown config fields: {sorted(unknown)}")
        values.update(payload)
    for f in dataclasses.fields(RunConfig):
        flag_value = getattr(args, f.name, None)
        if flag_value is not None:
            values[f.name] = flag_value
    config = RunConfig(**values)
    config.validate()
    return config


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _load_config(args)
        if args.command == "verify":
            return _cmd_verify(config)
        if args.command == "spectrum":
            return _cmd_spectrum(config)
        if args.command == "expand":
            return _cmd_expand(config, args.operand)
        if args.command == "export":
            return _cmd_export(config)
        raise ToolkitError(f"unknown command {args.command!r}")
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG_ERROR


if __name__ == "__main__":
    sys.exit(main())
