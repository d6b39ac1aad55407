"""Run configuration: a flat ``key = value`` document plus embedded presets.

Grammar
-------
One assignment per line, ``key = value``. Keys are dotted paths such as
``profile.delta``; a bare final segment (``delta``) is accepted when it is
unambiguous, and ``profile`` alone means ``profile.kind``. ``#`` starts a
comment. Numbers are plain decimals in units of lambda0 (``1e-12`` is fine,
``10lambda`` is not). Booleans are ``true``/``false``. Strings may be quoted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .dynamics import IntegratorConfig
from .model import ConfigurationError, Constant, ModelParams, Sinusoidal, Zero, minimal_n_max
from .spectrum import default_grid


class ConfigError(ValueError):
    """Malformed document, unknown key or invalid value."""


_NUMBER = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")
_INTEGER = re.compile(r"^[+-]?\d+$")

# key -> (type, default); a default of None for model.n_max means "derived from alpha"
SCHEMA: dict[str, tuple[str, object]] = {
    "model.omega": ("float", 2000.0),
    "model.omega0": ("float", 2000.0),
    "model.gamma": ("float", 0.0),
    "model.alpha": ("float", 5.0),
    "model.n_max": ("int", None),
    "profile.kind": ("kind", "zero"),
    "profile.delta": ("float", 0.0),
    "profile.c": ("float", 0.0),
    "profile.omega_prime": ("float", 0.0),
    "integrator.rel_tol": ("float", IntegratorConfig.rel_tol),
    "integrator.abs_tol": ("float", IntegratorConfig.abs_tol),
    "integrator.t_max": ("float", IntegratorConfig.t_max),
    "integrator.n_samples": ("int", IntegratorConfig.n_samples),
    "observables.renormalize": ("bool", False),
    "spectrum.enabled": ("bool", False),
    "spectrum.omega_min": ("float", 0.0),
    "spectrum.omega_max": ("float", 2.0),
    "spectrum.omega_step": ("float", 5e-4),
    "spectrum.subtract_mean": ("bool", False),
    "output.dir": ("str", "out"),
    "output.stem": ("str", "run"),
}

PROFILE_KINDS = ("zero", "constant", "sinusoidal")

_ALIASES = {"profile": "profile.kind", "tau_max": "integrator.t_max"}
for _key in SCHEMA:
    _leaf = _key.rsplit(".", 1)[1]
    if _leaf != "kind":
        _ALIASES[_leaf] = _key if _leaf not in _ALIASES else None
_ALIASES = {k: v for k, v in _ALIASES.items() if v is not None}

SWEEPABLE = tuple(k for k, (typ, _) in SCHEMA.items() if typ in ("float", "int"))


@dataclass(frozen=True)
class Preset:
    name: str
    caption: str
    values: dict


def _entropy_family(gamma=0.05, **extra):
    return {"model.alpha": 5.0, "model.omega": 2000.0, "model.omega0": 2000.0, "model.gamma": gamma, **extra}


_RES = {"profile.kind": "zero"}
_CONST = lambda d: {"profile.kind": "constant", "profile.delta": d}  # noqa: E731
_SIN = lambda c, wp: {"profile.kind": "sinusoidal", "profile.c": c, "profile.omega_prime": wp}  # noqa: E731
_SPEC = {"spectrum.enabled": True}

PRESETS: dict[str, Preset] = {p.name: p for p in [
    Preset("fig2a", "entropy and inversion, resonance, gamma=0, alpha=5, omega=omega0=2000",
           _entropy_family(0.0, **_RES)),
    Preset("fig2b", "entropy and inversion, resonance, gamma=0.01, alpha=5, omega=omega0=2000",
           _entropy_family(0.01, **_RES)),
    Preset("fig2c", "entropy and inversion, resonance, gamma=0.05, alpha=5, omega=omega0=2000",
           _entropy_family(0.05, **_RES)),
    Preset("fig3a", "entropy, constant detuning delta=10, gamma=0.05", _entropy_family(**_CONST(10.0))),
    Preset("fig3b", "entropy, constant detuning delta=20, gamma=0.05", _entropy_family(**_CONST(20.0))),
    Preset("fig4a", "entropy, sinusoidal detuning c=20, omega'=0.1, gamma=0.05",
           _entropy_family(**_SIN(20.0, 0.1))),
    Preset("fig4b", "entropy, sinusoidal detuning c=20, omega'=0.5, gamma=0.05",
           _entropy_family(**_SIN(20.0, 0.5))),
    Preset("fig5a", "entropy power spectrum of fig2a", _entropy_family(0.0, **_RES, **_SPEC)),
    Preset("fig5b", "entropy power spectrum of fig2b", _entropy_family(0.01, **_RES, **_SPEC)),
    Preset("fig5c", "entropy power spectrum of fig2c", _entropy_family(0.05, **_RES, **_SPEC)),
    Preset("fig6a", "entropy power spectrum of fig3a", _entropy_family(**_CONST(10.0), **_SPEC)),
    Preset("fig6b", "entropy power spectrum of fig3b", _entropy_family(**_CONST(20.0), **_SPEC)),
    Preset("fig7a", "entropy power spectrum of fig4a", _entropy_family(**_SIN(20.0, 0.1), **_SPEC)),
    Preset("fig7b", "entropy power spectrum of fig4b", _entropy_family(**_SIN(20.0, 0.5), **_SPEC)),
    Preset("fig8a", "inversion, constant detuning delta=10, gamma=0.05", _entropy_family(**_CONST(10.0))),
    Preset("fig8b", "inversion, constant detuning delta=20, gamma=0.05", _entropy_family(**_CONST(20.0))),
    Preset("fig9a", "inversion, sinusoidal detuning c=20, omega'=0.5, gamma=0.05",
           _entropy_family(**_SIN(20.0, 0.5))),
    Preset("fig9b", "inversion, sinusoidal detuning c=60, omega'=20, gamma=0.05",
           _entropy_family(**_SIN(60.0, 20.0))),
]}


@dataclass(frozen=True)
class RunConfig:
    """Fully resolved configuration. ``values`` holds every schema key."""

    values: dict
    preset: str | None = None
    notes: tuple = field(default=())

    def __getitem__(self, key):
        return self.values[key]

    def model(self) -> ModelParams:
        v = self.values
        return ModelParams(omega=v["model.omega"], omega0=v["model.omega0"], gamma=v["model.gamma"],
                           alpha=v["model.alpha"], n_max=v["model.n_max"])

    def profile(self):
        v = self.values
        kind = v["profile.kind"]
        if kind == "zero":
            return Zero()
        if kind == "constant":
            return Constant(v["profile.delta"])
        return Sinusoidal(v["profile.c"], v["profile.omega_prime"])

    def integrator(self) -> IntegratorConfig:
        v = self.values
        return IntegratorConfig(rel_tol=v["integrator.rel_tol"], abs_tol=v["integrator.abs_tol"],
                                t_max=v["integrator.t_max"], n_samples=v["integrator.n_samples"])

    def omega_grid(self) -> np.ndarray:
        v = self.values
        return default_grid(v["spectrum.omega_min"], v["spectrum.omega_max"], v["spectrum.omega_step"])

    def with_values(self, **updates) -> "RunConfig":
        vals = dict(self.values)
        vals.update(updates)
        return RunConfig(vals, self.preset, self.notes)

    def render(self) -> str:
        """Key-value text that parses back to this configuration."""
        return "".join(f"{k} = {format_value(self.values[k])}\n" for k in SCHEMA)


def format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        return f'"{value}"'
    return str(value)


def resolve_key(key: str) -> str:
    key = key.strip()
    if key in SCHEMA:
        return key
    if key in _ALIASES:
        return _ALIASES[key]
    raise ConfigError(f"unknown key '{key}'; valid keys: {', '.join(SCHEMA)}")


def parse_value(key: str, raw) -> object:
    typ = SCHEMA[key][0]
    if not isinstance(raw, str):
        raw = format_value(raw)
    text = raw.strip()
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        text = text[1:-1]
        if typ not in ("str", "kind"):
            raise ConfigError(f"{key}: expected a {typ}, got quoted string {raw!r}")
    if typ == "float":
        if not _NUMBER.match(text):
            raise ConfigError(f"{key}: '{raw}' is not a plain decimal number (units of lambda0, no suffixes)")
        return float(text)
    if typ == "int":
        if not _INTEGER.match(text):
            raise ConfigError(f"{key}: '{raw}' is not an integer")
        return int(text)
    if typ == "bool":
        if text.lower() not in ("true", "false"):
            raise ConfigError(f"{key}: '{raw}' is not true/false")
        return text.lower() == "true"
    if typ == "kind":
        if text not in PROFILE_KINDS:
            raise ConfigError(f"{key}: '{raw}' is not one of {', '.join(PROFILE_KINDS)}")
        return text
    if not text:
        raise ConfigError(f"{key}: empty value")
    return text


def parse_assignments(text: str) -> dict:
    """Parse ``key = value`` lines into {schema key: typed value}."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line.strip()!r}")
        raw_key, raw_value = body.split("=", 1)
        try:
            key = resolve_key(raw_key)
            if key in out:
                raise ConfigError(f"key '{key}' assigned twice")
            out[key] = parse_value(key, raw_value)
        except ConfigError as exc:
            raise ConfigError(f"line {lineno}: {exc}") from None
    return out


def parse_override(item: str) -> tuple[str, object]:
    if "=" not in item:
        raise ConfigError(f"--set expects key=value, got {item!r}")
    raw_key, raw_value = item.split("=", 1)
    key = resolve_key(raw_key)
    return key, parse_value(key, raw_value)


def parse_config(text: str = "", preset: str | None = None, overrides=()) -> RunConfig:
    """Build a validated :class:`RunConfig`.

    Precedence, lowest first: schema defaults, the document ``text``, the
    preset (from ``preset`` or a ``preset = name`` line), then ``overrides``
    given as ``key=value`` strings or (key, value) pairs.
    """
    lines = []
    doc_preset = None
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        if "=" in body and body.split("=", 1)[0].strip() == "preset":
            doc_preset = body.split("=", 1)[1].strip().strip("\"'")
        else:
            lines.append(line)
    explicit = parse_assignments("\n".join(lines))
    preset = preset or doc_preset

    values = {k: default for k, (_, default) in SCHEMA.items()}
    values.update(explicit)
    notes = []
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset '{preset}'; available: {', '.join(PRESETS)}")
        for key, val in PRESETS[preset].values.items():
            if key in explicit and explicit[key] != val:
                notes.append(f"preset {preset} overrides {key}: {format_value(explicit[key])} -> {format_value(val)}")
            values[key] = val
    for item in overrides:
        key, val = parse_override(item) if isinstance(item, str) else (resolve_key(item[0]), parse_value(resolve_key(item[0]), item[1]))
        values[key] = val

    if values["model.n_max"] is None:
        values["model.n_max"] = minimal_n_max(values["model.alpha"])
    cfg = RunConfig(values, preset, tuple(notes))
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    try:
        cfg.model()
    except ConfigurationError as exc:
        raise ConfigError(f"model: {exc}") from None
    try:
        cfg.profile()
    except ConfigurationError as exc:
        raise ConfigError(f"profile: {exc} (set profile.omega_prime > 0)") from None
    try:
        cfg.integrator()
    except ValueError as exc:
        raise ConfigError(f"integrator: {exc}") from None
    v = cfg.values
    if not (v["spectrum.omega_step"] > 0 and v["spectrum.omega_max"] >= v["spectrum.omega_min"]):
        raise ConfigError("spectrum: need omega_step > 0 and omega_max >= omega_min")
