"""Run configuration: a flat ``section.key = value`` text file."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .trajectory import Kind, Trajectory


class ConfigError(ValidationError):
    pass


@dataclass
class TrajectoryConfig:
    kind: str = "static"
    epsilon: int = 1
    v: float = 0.0
    a: float = 0.0
    omega: float = 0.0


@dataclass
class SweepConfig:
    t_ret: float = 0.0
    direction: tuple[float, float, float] = (0.0, 0.0, 1.0)
    r0: float | None = None  # default: 1e3 x near-zone scale
    growth: float = 2.0
    count: int = 12


@dataclass
class SampleConfig:
    t: float = 0.0
    r: tuple[float, float, float] = (0.0, 0.0, 10.0)


@dataclass
class GridConfig:
    dims: tuple[int, int, int] | None = None
    spacing: tuple[float, float, float] | None = None


@dataclass
class ErrataConfig:
    uniform_radical_variant: str = "corrected"
    combined_denominator_sign: str = "printed"
    osc_ac_variant: str = "corrected"
    osc_delta_variant: str = "corrected"


@dataclass
class RunConfig:
    trajectory: TrajectoryConfig = field(default_factory=TrajectoryConfig)
    q: float = 1.0
    c: float = 1.0
    sweep: SweepConfig = field(default_factory=SweepConfig)
    sample: SampleConfig = field(default_factory=SampleConfig)
    grid: GridConfig = field(default_factory=GridConfig)
    errata: ErrataConfig = field(default_factory=ErrataConfig)
    output_path: str | None = None
    n_convention: str = "retarded"
    source: str = "<config>"
    lines: dict = field(default_factory=dict)

    def make_trajectory(self) -> Trajectory:
        tc = self.trajectory
        try:
            return Trajectory(Kind(tc.kind), epsilon=tc.epsilon, v=tc.v, a=tc.a,
                              omega=tc.omega, c=self.c)
        except ValidationError as exc:
            keys = [k for k in ("trajectory.v", "trajectory.a", "trajectory.omega",
                                "physics.c", "trajectory.kind") if k in self.lines]
            where = f"{self.source}:{self.lines[keys[0]]}" if keys else self.source
            raise ConfigError(f"{where}: {exc}") from None

    def sweep_r0(self, traj: Trajectory) -> float:
        from .asymptotics import near_zone_scale
        return self.sweep.r0 if self.sweep.r0 is not None else 1e3 * near_zone_scale(traj)


def _floats(text, n=None):
    vals = tuple(float(x) for x in text.split(","))
    if n is not None and len(vals) != n:
        raise ValueError(f"expected {n} comma-separated numbers")
    return vals


def _choice(*allowed):
    def parse(text):
        if text not in allowed:
            raise ValueError(f"must be one of {', '.join(allowed)}")
        return text
    return parse


def _epsilon(text):
    val = int(float(text))
    if val not in (1, -1) or float(text) != val:
        raise ValueError("must be +1 or -1")
    return val


# key -> (attribute path, parser)
_KEYS = {
    "trajectory.kind": ("trajectory.kind", _choice(*(k.value for k in Kind))),
    "trajectory.epsilon": ("trajectory.epsilon", _epsilon),
    "trajectory.v": ("trajectory.v", float),
    "trajectory.a": ("trajectory.a", float),
    "trajectory.omega": ("trajectory.omega", float),
    "physics.q": ("q", float),
    "physics.c": ("c", float),
    "sweep.t_ret": ("sweep.t_ret", float),
    "sweep.direction": ("sweep.direction", lambda s: _floats(s, 3)),
    "sweep.r0": ("sweep.r0", float),
    "sweep.growth": ("sweep.growth", float),
    "sweep.count": ("sweep.count", int),
    "sample.t": ("sample.t", float),
    "sample.r": ("sample.r", lambda s: _floats(s, 3)),
    "grid.dims": ("grid.dims", lambda s: tuple(int(x) for x in s.split(","))),
    "grid.spacing": ("grid.spacing", lambda s: _floats(s, 3)),
    "output.path": ("output_path", str),
    "errata.uniform_radical_variant": ("errata.uniform_radical_variant", _choice("printed", "corrected")),
    "errata.combined_denominator_sign": ("errata.combined_denominator_sign", _choice("printed", "flipped")),
    "errata.osc_ac_variant": ("errata.osc_ac_variant", _choice("printed", "corrected")),
    "errata.osc_delta_variant": ("errata.osc_delta_variant", _choice("printed", "corrected")),
    "projection.n_convention": ("n_convention", _choice("retarded", "instantaneous")),
}


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    cfg = RunConfig(source=source)
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        attr, parse = _KEYS[key]
        try:
            value = parse(val)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: {key}: {exc}") from None
        target = cfg
        *parents, last = attr.split(".")
        for p in parents:
            target = getattr(target, p)
        setattr(target, last, value)
        cfg.lines[key] = lineno
    _validate(cfg)
    return cfg


def _at(cfg, key):
    return f"{cfg.source}:{cfg.lines[key]}" if key in cfg.lines else cfg.source


def _validate(cfg: RunConfig) -> None:
    cfg.make_trajectory()
    e = np.asarray(cfg.sweep.direction, dtype=float)
    norm = float(np.linalg.norm(e))
    if not math.isfinite(norm) or abs(norm - 1.0) > 1e-6:
        raise ConfigError(f"{_at(cfg, 'sweep.direction')}: sweep.direction must be a unit vector "
                          f"(|e| = {norm:.9g})")
    cfg.sweep.direction = tuple(e / norm)
    if cfg.sweep.count < 8:
        raise ConfigError(f"{_at(cfg, 'sweep.count')}: sweep.count must be >= 8, got {cfg.sweep.count}")
    if cfg.sweep.growth <= 1:
        raise ConfigError(f"{_at(cfg, 'sweep.growth')}: sweep.growth must exceed 1")
    if cfg.sweep.r0 is not None and cfg.sweep.r0 <= 0:
        raise ConfigError(f"{_at(cfg, 'sweep.r0')}: sweep.r0 must be positive")
    if cfg.grid.dims is not None and (len(cfg.grid.dims) != 3 or min(cfg.grid.dims) < 5):
        raise ConfigError(f"{_at(cfg, 'grid.dims')}: grid.dims needs three values >= 5")


def load_config(path) -> RunConfig:
    path = Path(path)
    return parse_config(path.read_text(), str(path))
