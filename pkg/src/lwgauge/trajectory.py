"""Prescribed point-charge orbits along the x-axis.

All orbits satisfy R(0) = 0 and are kinematically prescribed; natural units
with an explicit speed of light ``c`` (default 1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ValidationError


class Kind(str, Enum):
    STATIC = "static"
    UNIFORM = "uniform"
    OSCILLATORY = "oscillatory"
    COMBINED = "combined"


@dataclass(frozen=True)
class Trajectory:
    """R(t) = (eps*v*t + a*sin(omega*t), 0, 0), restricted per ``kind``.

    Parameters that do not belong to ``kind`` are forced to zero so that
    e.g. ``Trajectory(Kind.UNIFORM, v=0.5, a=3.0)`` is just uniform motion.
    """

    kind: Kind = Kind.STATIC
    epsilon: int = 1
    v: float = 0.0
    a: float = 0.0
    omega: float = 0.0
    c: float = 1.0

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.epsilon not in (1, -1):
            raise ValidationError(f"epsilon must be +1 or -1, got {self.epsilon!r}")
        object.__setattr__(self, "epsilon", int(self.epsilon))
        for name in ("v", "a", "omega", "c"):
            val = float(getattr(self, name))
            if not math.isfinite(val):
                raise ValidationError(f"{name} must be finite, got {val!r}")
            object.__setattr__(self, name, val)
        if self.c <= 0:
            raise ValidationError(f"speed of light c must be positive, got {self.c}")
        if kind in (Kind.STATIC, Kind.OSCILLATORY):
            object.__setattr__(self, "v", 0.0)
        if kind in (Kind.STATIC, Kind.UNIFORM):
            object.__setattr__(self, "a", 0.0)
            object.__setattr__(self, "omega", 0.0)
        if self.v < 0 or self.a < 0 or self.omega < 0:
            raise ValidationError("v, a and omega must be non-negative (direction is epsilon)")
        if kind in (Kind.OSCILLATORY, Kind.COMBINED) and self.omega <= 0:
            raise ValidationError(f"{kind.value} motion needs omega > 0")
        beta = self.max_speed_ratio()
        if beta >= 1.0:
            raise ValidationError(
                f"speed bound violated: max speed ratio {beta:.6g} >= 1 "
                f"(kind={kind.value}, v={self.v}, a={self.a}, omega={self.omega}, c={self.c})"
            )

    # constructors -----------------------------------------------------------
    @classmethod
    def static(cls, c=1.0):
        return cls(Kind.STATIC, c=c)

    @classmethod
    def uniform(cls, v, epsilon=1, c=1.0):
        return cls(Kind.UNIFORM, epsilon=epsilon, v=v, c=c)

    @classmethod
    def oscillatory(cls, a, omega, c=1.0):
        return cls(Kind.OSCILLATORY, a=a, omega=omega, c=c)

    @classmethod
    def combined(cls, v, a, omega, epsilon=1, c=1.0):
        return cls(Kind.COMBINED, epsilon=epsilon, v=v, a=a, omega=omega, c=c)

    # kinematics ---------------------------------------------------------------
    @property
    def period(self):
        return 2 * math.pi / self.omega if self.omega > 0 else math.inf

    @property
    def is_bounded(self):
        return self.v == 0.0

    def x(self, t):
        """x-component of R(t); accepts scalars or arrays."""
        x = self.epsilon * self.v * t
        if self.a != 0.0:
            x = x + self.a * np.sin(self.omega * t)
        return x

    def vx(self, t):
        """x-component of dR/dt."""
        vx = self.epsilon * self.v + 0.0 * t
        if self.a != 0.0:
            vx = vx + self.a * self.omega * np.cos(self.omega * t)
        return vx

    def position(self, t):
        return np.array([float(self.x(t)), 0.0, 0.0])

    def velocity(self, t):
        return np.array([float(self.vx(t)), 0.0, 0.0])

    def max_speed_ratio(self, c=None):
        """Sufficient bound on sup|dR/dt|/c: (v + a*omega)/c."""
        c = self.c if c is None else float(c)
        if c <= 0:
            raise ValidationError("c must be positive")
        return (self.v + self.a * self.omega) / c


def position(traj: Trajectory, t: float) -> np.ndarray:
    return traj.position(t)


def velocity(traj: Trajectory, t: float) -> np.ndarray:
    return traj.velocity(t)


def max_speed_ratio(traj: Trajectory, c: float | None = None) -> float:
    return traj.max_speed_ratio(c)
