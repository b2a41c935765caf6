"""Run configuration in a key-value text format.

::

    # comments start with '#'
    stages = group, rep, fixtures, double-cover, descend-x, verify
    seed = 0
    prime = 43
    y_equations = data/Y.txt
    report = out/report.json
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields

STAGES = ("group", "rep", "fixtures", "double-cover", "sections", "multable", "fix-scalings", "emit-z", "descend-x", "verify")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    stages: list[str] = field(default_factory=lambda: ["group", "rep", "fixtures", "double-cover", "descend-x", "verify"])
    seed: int = 0
    prime: int = 43
    verify_prime: int = 37
    root: int | None = None
    margin: float = 1.25
    points: int = 200
    a: int = 3
    out_dir: str = "coverforge-out"
    report: str | None = None
    y_equations: str | None = None
    u_basis: str | None = None
    w_model: str | None = None
    representatives: str | None = None
    base_model: str | None = None
    base_points: str | None = None
    cover_coords: str | None = None
    z_actions: str | None = None
    z_model: str | None = None
    z_points: str | None = None
    z_boundary: str | None = None
    x_equations: str | None = None

    def validate(self, check_files: bool = True) -> None:
        bad = [s for s in self.stages if s not in STAGES]
        if bad:
            raise ConfigError(f"unknown stage(s) {bad}; known: {', '.join(STAGES)}")
        order = [STAGES.index(s) for s in self.stages]
        if order != sorted(order):
            raise ConfigError("stages must follow the pipeline order " + " -> ".join(STAGES))
        if self.margin < 1:
            raise ConfigError("margin must be at least 1")
        if check_files:
            for f in fields(self):
                v = getattr(self, f.name)
                if f.name in _PATH_KEYS and v and not os.path.exists(v):
                    raise ConfigError(f"{f.name}: file {v} does not exist")

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_PATH_KEYS = {
    "y_equations",
    "u_basis",
    "w_model",
    "representatives",
    "base_model",
    "base_points",
    "cover_coords",
    "z_actions",
    "z_model",
    "z_points",
    "z_boundary",
    "x_equations",
}


def parse_config_text(text: str, base_dir: str = ".") -> RunConfig:
    """Relative paths are resolved against ``base_dir``."""
    cfg = RunConfig()
    types = {f.name: f.type for f in fields(RunConfig)}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key, val = key.strip().replace("-", "_"), val.strip()
        if not sep or key not in types:
            raise ConfigError(f"line {lineno}: expected 'key = value' with a known key, got {line!r}")
        try:
            if key == "stages":
                value = [s.strip() for s in val.split(",") if s.strip()]
            elif key in ("seed", "prime", "verify_prime", "points", "a"):
                value = int(val)
            elif key == "root":
                value = int(val) if val else None
            elif key == "margin":
                value = float(val)
            elif key in _PATH_KEYS or key in ("report", "out_dir"):
                value = os.path.join(base_dir, val) if val and not os.path.isabs(val) else (val or None)
            else:
                value = val
        except ValueError:
            raise ConfigError(f"line {lineno}: bad value for {key}: {val!r}") from None
        setattr(cfg, key, value)
    return cfg
