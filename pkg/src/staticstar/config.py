"""Run configuration: defaults, config-file parsing, CLI merge.

Precedence is CLI > file > built-in defaults.  The file format is flat
``key = value`` pairs under a ``[staticstar]`` section, read with
:mod:`configparser`::

    [staticstar]
    abs_tol = 1e-10
    grid_n = 512
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, fields, replace

from .errors import BadParams

CONFIG_SECTION = "staticstar"


@dataclass(frozen=True)
class RunConfig:
    """Numeric knobs shared across CLI commands.

    abs_tol / rel_tol feed the ODE integrators, surface_tol_scale the
    surface-detection gate (scaled by the central density), grid_n the
    residual / root-scan grids, quad_degree the sphere quadrature, lam the
    cosmological constant for builders that accept one.
    """

    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    surface_tol_scale: float = 1e-12
    grid_n: int = 512
    quad_degree: int = 35
    lam: float = 0.0

    def __post_init__(self):
        for name in ("abs_tol", "rel_tol", "surface_tol_scale"):
            if not getattr(self, name) > 0.0:
                raise BadParams(f"{name} must be positive, got {getattr(self, name)}")
        if self.grid_n < 8:
            raise BadParams(f"grid_n must be at least 8, got {self.grid_n}")
        if self.quad_degree < 3:
            raise BadParams(f"quad_degree must be at least 3, got {self.quad_degree}")


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}
_PARSERS = {"float": float, "int": int}


def load_config(path: str) -> dict:
    """Read a config file into an override dict (keys validated, values typed)."""
    cp = configparser.ConfigParser()
    read = cp.read(path)
    if not read:
        raise OSError(f"config file not readable: {path}")
    if not cp.has_section(CONFIG_SECTION):
        raise BadParams(f"config file has no [{CONFIG_SECTION}] section: {path}")
    overrides = {}
    for key, raw in cp.items(CONFIG_SECTION):
        if key not in _FIELD_TYPES:
            raise BadParams(f"unknown config key {key!r}")
        try:
            overrides[key] = _PARSERS[_FIELD_TYPES[key]](raw)
        except ValueError as exc:
            raise BadParams(f"bad value for {key}: {raw!r}") from exc
    return overrides


def merge_config(file_overrides: dict | None = None,
                 cli_overrides: dict | None = None) -> RunConfig:
    """Defaults, then file, then CLI; ``None`` CLI values mean 'not given'."""
    cfg = RunConfig()
    if file_overrides:
        cfg = replace(cfg, **file_overrides)
    if cli_overrides:
        explicit = {k: v for k, v in cli_overrides.items() if v is not None}
        if explicit:
            cfg = replace(cfg, **explicit)
    return cfg
