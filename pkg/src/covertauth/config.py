"""Flat `key = value` configuration files.

Every scenario parameter is a scalar, `#` starts a comment, unknown keys are
rejected, and anything omitted takes its default.  Angles are degrees.
"""

from __future__ import annotations

import dataclasses
from pathlib import Path

from .simulate import ScenarioConfig


class ConfigError(ValueError):
    """Malformed, unknown or out-of-range configuration entry."""


_FIELDS = {f.name: f.type for f in dataclasses.fields(ScenarioConfig)}

_RANGE_CHECKS = {
    "epsilon": lambda v: v > 0,
    "trials": lambda v: v >= 1,
    "n_t": lambda v: v >= 1,
    "n_r": lambda v: v >= 1,
    "l_t": lambda v: v >= 1,
    "l_r": lambda v: v >= 1,
    "n_total": lambda v: v >= 2,
    "n_max": lambda v: v >= 1,
    "coupling_taps": lambda v: v >= 1,
    "p_max": lambda v: v > 0,
    "p_min": lambda v: v > 0,
    "coupling_strength_alice": lambda v: v >= 0,
    "coupling_strength_eve": lambda v: v >= 0,
    "coupling_strength_rx": lambda v: v >= 0,
    "alice_gain_var": lambda v: v > 0,
    "eve_gain_var": lambda v: v > 0,
    "h_error_bound": lambda v: v >= 0,
    "eta": lambda v: v > 0,
    "tau_p": lambda v: v > 0,
    "tau_n": lambda v: v > 0,
    "tol": lambda v: v > 0,
    "t_max": lambda v: v >= 1,
    "pf_target": lambda v: 0 < v < 1,
    "sidelobe_beta": lambda v: 0 <= v < 1,
    "eve_n_offset": lambda v: v > 0,
    "eve_p_offset": lambda v: v > 0,
}

_INT_FIELDS = {"n_t", "n_r", "l_t", "l_r", "n_total", "n_max", "coupling_taps",
               "t_max", "trials", "master_seed"}


def parse_config(path: str | Path) -> ScenarioConfig:
    """Read a config file; missing keys keep the shipped defaults."""
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    values = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, _, text = line.partition("=")
        key = key.strip()
        text = text.strip()
        if key not in _FIELDS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            value = int(text) if key in _INT_FIELDS else float(text)
        except ValueError:
            raise ConfigError(f"{path}:{lineno}: cannot parse value for {key!r}: {text!r}")
        check = _RANGE_CHECKS.get(key)
        if check and not check(value):
            raise ConfigError(f"{path}:{lineno}: value out of range for {key!r}: {text}")
        values[key] = value
    cfg = ScenarioConfig(**values)
    if not cfg.n_max < cfg.n_total:
        raise ConfigError(f"{path}: n_max must be smaller than n_total")
    if not cfg.p_min < cfg.p_max:
        raise ConfigError(f"{path}: p_min must be smaller than p_max")
    if not 1 <= cfg.coupling_taps <= min(cfg.n_t, cfg.n_r):
        raise ConfigError(f"{path}: coupling_taps must fit the smaller array")
    return cfg
