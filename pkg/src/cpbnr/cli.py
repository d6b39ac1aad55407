"""Command line entry point: run, sweep, presets, validate.

    cpbnr run --preset fig2a --out results/
    cpbnr run --config my.cfg --set model.gamma=0.01 --threads 4
    cpbnr sweep --preset fig2a --axis model.gamma --values 0,0.01,0.05 --out sweep/
    cpbnr presets
    cpbnr validate --config my.cfg
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .config import PRESETS, SWEEPABLE, ConfigError, RunConfig, format_value, parse_config, resolve_key
from .dynamics import IntegrationError, evolve_state
from .model import check_profile
from .observables import LN2, ConsistencyError, ObservableSeries, series
from .spectrum import SpectrumResult, power_spectrum

CONSISTENCY_TOL = 1e-9

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIG = 2
EXIT_CONSISTENCY = 3


@dataclass
class RunResult:
    config: RunConfig
    observables: ObservableSeries
    spectrum: SpectrumResult | None
    files: dict
    problems: list

    @property
    def ok(self) -> bool:
        return not self.problems


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def observables_csv(obs: ObservableSeries) -> str:
    rows = ["tau,entropy,inversion,norm2"]
    for row in zip(obs.tau, obs.entropy, obs.inversion, obs.norm2):
        rows.append(",".join(_fmt(x) for x in row))
    return "\n".join(rows) + "\n"


def spectrum_csv(spec: SpectrumResult) -> str:
    rows = ["omega,ps_re,ps_im,ps_abs,ps_norm"]
    for w, z, mag, nrm in zip(spec.omega_grid, spec.ps_complex, spec.ps_abs, spec.ps_normalized):
        rows.append(",".join(_fmt(x) for x in (w, z.real, z.imag, mag, nrm)))
    return "\n".join(rows) + "\n"


def consistency_problems(obs: ObservableSeries) -> list[str]:
    problems = []
    if np.any(obs.norm2 <= 0) or np.any(obs.norm2 > 1 + CONSISTENCY_TOL):
        problems.append(f"norm2 outside (0, 1+{CONSISTENCY_TOL:g}]")
    if np.any(obs.entropy < 0) or np.any(obs.entropy > LN2 + CONSISTENCY_TOL):
        problems.append("entropy outside [0, ln2]")
    if np.any(np.abs(obs.inversion) > 1 + CONSISTENCY_TOL):
        problems.append("inversion outside [-1, 1]")
    return problems


def simulate(config: RunConfig, threads: int = 1) -> tuple[ObservableSeries, SpectrumResult | None]:
    params = config.model()
    profile = config.profile()
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        check_profile(params, profile)
    traj = evolve_state(params, profile, config.integrator(), threads=threads)
    obs = series(traj, renormalize=config["observables.renormalize"])
    spec = None
    if config["spectrum.enabled"]:
        spec = power_spectrum(obs, config.omega_grid(), subtract_mean=config["spectrum.subtract_mean"])
    return obs, spec


def _write(path: Path, text: str) -> str:
    data = text.encode("ascii")
    path.write_bytes(data)
    return hashlib.sha256(data).hexdigest()


def manifest_text(config: RunConfig, checksums: dict, problems=()) -> str:
    lines = [f"# cpbnr {__version__} run manifest", "# reparse this file as a config to repeat the run"]
    if config.preset:
        lines.append(f"# preset: {config.preset} ({PRESETS[config.preset].caption})")
    lines += [f"# {note}" for note in config.notes]
    lines += [f"# output {name} sha256={digest}" for name, digest in checksums.items()]
    lines += [f"# problem: {p}" for p in problems]
    return "\n".join(lines) + "\n" + config.render()


def run(config: RunConfig, threads: int = 1, out_dir: str | Path | None = None) -> RunResult:
    """Simulate ``config`` and write CSVs plus a manifest into the output directory."""
    if out_dir is not None:
        config = config.with_values(**{"output.dir": str(out_dir)})
    out = Path(config["output.dir"])
    stem = config["output.stem"]
    out.mkdir(parents=True, exist_ok=True)
    obs, spec = simulate(config, threads)
    problems = consistency_problems(obs)
    files = {}
    checksums = {}
    path = out / f"{stem}_observables.csv"
    checksums[path.name] = _write(path, observables_csv(obs))
    files["observables"] = path
    if spec is not None:
        path = out / f"{stem}_spectrum.csv"
        checksums[path.name] = _write(path, spectrum_csv(spec))
        files["spectrum"] = path
    path = out / f"{stem}_manifest.txt"
    _write(path, manifest_text(config, checksums, problems))
    files["manifest"] = path
    return RunResult(config, obs, spec, files, problems)


def _point_dirname(axis: str, value) -> str:
    return f"{axis.rsplit('.', 1)[1]}_{format_value(value)}"


def sweep(config: RunConfig, axis: str, values, threads: int = 1, out_dir: str | Path | None = None):
    """One run per value of ``axis`` in its own subdirectory; failures are recorded, not raised.

    Returns (results, failures) where failures maps value -> message.
    """
    axis = resolve_key(axis)
    if axis not in SWEEPABLE:
        raise ConfigError(f"'{axis}' is not a sweepable scalar key; choose from {', '.join(SWEEPABLE)}")
    root = Path(out_dir if out_dir is not None else config["output.dir"])
    root.mkdir(parents=True, exist_ok=True)
    results, failures, index = [], {}, []
    for value in values:
        sub = root / _point_dirname(axis, value)
        try:
            point = parse_config(config.render(), overrides=[(axis, value)])
            point = RunConfig(point.values, config.preset, config.notes)
            res = run(point, threads, sub)
        except (ConfigError, IntegrationError, ConsistencyError, OSError) as exc:
            failures[value] = str(exc)
            index.append(f"# failed {axis}={format_value(value)}: {exc}")
            continue
        results.append(res)
        status = "ok" if res.ok else "consistency-failure"
        index.append(f"# run {axis}={format_value(value)} dir={sub.name} status={status}")
    lines = [f"# cpbnr {__version__} sweep manifest", f"# axis = {axis}",
             f"# values = {', '.join(format_value(v) for v in values)}"]
    if config.preset:
        lines.append(f"# preset: {config.preset} ({PRESETS[config.preset].caption})")
    (root / "sweep_manifest.txt").write_text("\n".join(lines + index) + "\n" + config.render(), encoding="ascii")
    return results, failures


def _load(args) -> RunConfig:
    text = Path(args.config).read_text() if args.config else ""
    return parse_config(text, preset=args.preset, overrides=args.set or ())


def _parse_values(axis: str, text: str):
    from .config import parse_value

    key = resolve_key(axis)
    return [parse_value(key, item) for item in text.split(",") if item.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpbnr", description="Damped Jaynes-Cummings simulator for a Cooper pair box coupled to a nanomechanical resonator.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key = value configuration file")
        p.add_argument("--preset", help="embedded figure preset (see 'cpbnr presets')")
        p.add_argument("--set", action="append", metavar="KEY=VALUE", help="override a key (repeatable)")

    p_run = sub.add_parser("run", help="simulate one configuration")
    common(p_run)
    p_run.add_argument("--out", help="output directory")
    p_run.add_argument("--threads", type=int, default=1)

    p_sweep = sub.add_parser("sweep", help="one run per value of a scalar key")
    common(p_sweep)
    p_sweep.add_argument("--axis", required=True, help="key path, e.g. model.gamma")
    p_sweep.add_argument("--values", required=True, help="comma separated values")
    p_sweep.add_argument("--out", help="output directory")
    p_sweep.add_argument("--threads", type=int, default=1)

    sub.add_parser("presets", help="list embedded presets")

    p_val = sub.add_parser("validate", help="parse and print the resolved configuration")
    common(p_val)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "presets":
        for name, preset in PRESETS.items():
            print(f"{name:6s} {preset.caption}")
        return EXIT_OK
    try:
        config = _load(args)
        if args.command == "validate":
            for note in config.notes:
                print(f"# {note}")
            sys.stdout.write(config.render())
            return EXIT_OK
        if args.command == "run":
            res = run(config, max(1, args.threads), args.out)
            for problem in res.problems:
                print(f"cpbnr: consistency check failed: {problem}", file=sys.stderr)
            return EXIT_OK if res.ok else EXIT_CONSISTENCY
        values = _parse_values(args.axis, args.values)
        results, failures = sweep(config, args.axis, values, max(1, args.threads), args.out)
        for value, msg in failures.items():
            print(f"cpbnr: sweep point {format_value(value)} failed: {msg}", file=sys.stderr)
        if failures:
            return EXIT_FAILURE
        return EXIT_OK if all(r.ok for r in results) else EXIT_CONSISTENCY
    except ConfigError as exc:
        print(f"cpbnr: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, ConsistencyError, OSError) as exc:
        print(f"cpbnr: {exc}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
