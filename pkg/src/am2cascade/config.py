"""Run configuration: presets, parameter files, key=value configs.

Parameter files are flat INI-style key=value text with a [kinetics]
section (and optionally [operating] / [options]); diff-friendly and
trivially parseable. The environment variable AM2CASCADE_PRESET_DIR may
point at a directory of <name>.params files that override or extend the
built-in presets.
"""

from __future__ import annotations

import configparser
import os
from pathlib import Path

from .kinetics import KineticParams, OperatingPoint, PRESETS

PRESET_DIR_ENV = "AM2CASCADE_PRESET_DIR"

_KINETIC_KEYS = ("m1", "ks1", "m2", "ks2", "ki", "k1", "k2", "k3")


class ConfigError(ValueError):
    pass


def _parser(path: Path) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    try:
        with open(path) as fh:
            cp.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from exc
    return cp


def parse_params_file(path: str | Path) -> KineticParams:
    cp = _parser(Path(path))
    if not cp.has_section("kinetics"):
        raise ConfigError(f"{path}: missing [kinetics] section")
    values = {}
    for key in _KINETIC_KEYS:
        if not cp.has_option("kinetics", key):
            raise ConfigError(f"{path}: [kinetics] is missing {key}")
        try:
            values[key] = cp.getfloat("kinetics", key)
        except ValueError as exc:
            raise ConfigError(f"{path}: kinetics.{key}: {exc}") from exc
    extra = set(cp.options("kinetics")) - set(_KINETIC_KEYS)
    if extra:
        raise ConfigError(f"{path}: unknown kinetics keys {sorted(extra)}")
    return KineticParams(**values)


def write_params_file(path: str | Path, p: KineticParams) -> None:
    lines = ["[kinetics]"]
    lines += [f"{key} = {getattr(p, key):.9g}" for key in _KINETIC_KEYS]
    Path(path).write_text("\n".join(lines) + "\n")


def get_preset(name: str) -> KineticParams:
    """Resolve a preset name: env-var directory first, then built-ins."""
    preset_dir = os.environ.get(PRESET_DIR_ENV)
    if preset_dir:
        candidate = Path(preset_dir) / f"{name}.params"
        if candidate.exists():
            return parse_params_file(candidate)
    if name in PRESETS:
        return PRESETS[name]
    raise ConfigError(
        f"unknown preset {name!r}; built-ins: {', '.join(sorted(PRESETS))}"
    )


def parse_operating_file(path: str | Path) -> OperatingPoint:
    cp = _parser(Path(path))
    if not cp.has_section("operating"):
        raise ConfigError(f"{path}: missing [operating] section")
    try:
        return OperatingPoint(
            d=cp.getfloat("operating", "d"),
            r=cp.getfloat("operating", "r"),
            s1in=cp.getfloat("operating", "s1in"),
            s2in=cp.getfloat("operating", "s2in"),
        )
    except (ValueError, configparser.NoOptionError) as exc:
        raise ConfigError(f"{path}: [operating]: {exc}") from exc
