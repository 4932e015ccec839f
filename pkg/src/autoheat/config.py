"""Run configuration: defaults, key=value config files, environment override."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from importlib import resources

DATA_ENV_VAR = "AUTOHEAT_DATA"

DEFAULT_TOLERANCES = {
    "oracle_rel": 1e-3,
    "tail": 1e-8,
    "shell": 1e-4,
    "quad_rel": 1e-3,
}


@dataclass(frozen=True)
class RunConfig:
    maass_data_path: str | None = None  # None: $AUTOHEAT_DATA, then packaged data
    r_max: float = 12.0
    panels: int = 6
    nodes_per_panel: int = 32
    oracle_norm_bound: float = 25.0
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    output_format: str = "csv"

    def __post_init__(self):
        if not self.r_max > 0.0:
            raise ValueError("r_max must be positive")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"unknown output format '{self.output_format}'")
        for name, tol in self.tolerances.items():
            if not tol > 0.0:
                raise ValueError(f"tolerance '{name}' must be positive")

    def resolve_data_path(self) -> str:
        if self.maass_data_path:
            return self.maass_data_path
        env = os.environ.get(DATA_ENV_VAR)
        if env:
            return env
        return str(resources.files("autoheat").joinpath("data/maass_sl2z.dat"))


_FLOAT_KEYS = {"r_max", "oracle_norm_bound"}
_INT_KEYS = {"panels", "nodes_per_panel"}
_STR_KEYS = {"maass_data_path", "output_format"}


def parse_config_file(path: str) -> dict:
    """Read a key = value file; `tol.<name>` keys populate the tolerance map."""
    updates: dict = {}
    tolerances: dict = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value, got '{line}'")
            key, val = (part.strip() for part in line.split("=", 1))
            if key.startswith("tol."):
                tolerances[key[4:]] = float(val)
            elif key in _FLOAT_KEYS:
                updates[key] = float(val)
            elif key in _INT_KEYS:
                updates[key] = int(val)
            elif key in _STR_KEYS:
                updates[key] = val.strip("\"'")
            else:
                raise ValueError(f"{path}:{lineno}: unknown configuration key '{key}'")
    if tolerances:
        updates["tolerances"] = {**DEFAULT_TOLERANCES, **tolerances}
    return updates


def build_config(config_path: str | None = None, **overrides) -> RunConfig:
    """File first, then explicit flag overrides."""
    cfg = RunConfig()
    if config_path:
        cfg = replace(cfg, **parse_config_file(config_path))
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if overrides:
        cfg = replace(cfg, **overrides)
    return cfg
