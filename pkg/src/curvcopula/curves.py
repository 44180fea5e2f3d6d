"""Strictly increasing curves of the unit square.

A curve maps [0, 1] onto [0, 1], fixes both corners and is strictly
increasing, so it has an exact inverse. Curves are stored in piecewise
linear form; closed-form families (powers) enter by sampling on a fixed
grid. Crossings with the identity are inserted as breakpoints at
construction, so the pointwise minimum of the curve with the identity is
again exactly piecewise linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, DomainError
from .pwl import MIN_STEP, PiecewiseLinearFn

#: Default number of sample points for closed-form curves.
DEFAULT_POWER_RESOLUTION = 4097

#: Consecutive breakpoint values must rise by at least this much.
MIN_RISE = 1e-12


def _insert_identity_crossings(xs: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    g = ys - xs
    flips = np.nonzero(g[:-1] * g[1:] < 0.0)[0]
    if not flips.size:
        return xs, ys
    cross = xs[flips] - g[flips] * (xs[flips + 1] - xs[flips]) / (g[flips + 1] - g[flips])
    # keep only crossings clearly interior to their segment
    ok = (cross - xs[flips] >= MIN_STEP) & (xs[flips + 1] - cross >= MIN_STEP)
    cross = cross[ok]
    if not cross.size:
        return xs, ys
    xs2 = np.sort(np.concatenate([xs, cross]))
    ys2 = np.interp(xs2, xs, ys)
    # a crossing sits on the identity by definition; store it exactly
    idx = np.searchsorted(xs2, cross)
    ys2[idx] = cross
    return xs2, ys2


@dataclass(frozen=True, eq=False)
class MonotoneCurve:
    """A strictly increasing piecewise-linear bijection of [0, 1].

    Parameters
    ----------
    xs, ys : array-like
        Breakpoint coordinates; both strictly increasing, starting at
        (0, 0) and ending at (1, 1). Flat segments are rejected, never
        coerced.
    source : str
        Construction tag: "identity", "power" or "pwl".
    """

    xs: np.ndarray
    ys: np.ndarray
    source: str = "pwl"

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise DomainError("curve needs two 1-d coordinate arrays of equal length >= 2")
        if xs[0] != 0.0 or ys[0] != 0.0 or xs[-1] != 1.0 or ys[-1] != 1.0:
            raise DomainError("curve must start at (0, 0) and end at (1, 1)")
        if np.min(ys) < 0.0 or np.max(ys) > 1.0:
            raise DomainError("curve values outside [0, 1]")
        if np.min(np.diff(xs)) < MIN_STEP:
            raise DomainError("curve x coordinates must be strictly increasing")
        if np.min(np.diff(ys)) < MIN_RISE:
            raise DomainError("curve must rise strictly; flat segments are rejected")
        xs, ys = _insert_identity_crossings(xs, ys)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def identity(cls) -> "MonotoneCurve":
        return cls(np.array([0.0, 1.0]), np.array([0.0, 1.0]), source="identity")

    @classmethod
    def power(cls, exponent: float, resolution: int = DEFAULT_POWER_RESOLUTION) -> "MonotoneCurve":
        """The curve t -> t**exponent sampled on a uniform grid.

        Raises DomainError when the sampled increments fall below the
        strictness guard (very large or very small exponents at the given
        resolution).
        """
        if not np.isfinite(exponent) or exponent <= 0.0:
            raise DomainError(f"power exponent must be positive, got {exponent!r}")
        if resolution < 2:
            raise DomainError("power curve resolution must be at least 2")
        xs = np.linspace(0.0, 1.0, int(resolution))
        ys = xs ** float(exponent)
        ys[0], ys[-1] = 0.0, 1.0
        return cls(xs, ys, source="power")

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "MonotoneCurve":
        pts = np.asarray(list(points), dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise DomainError("points must be a sequence of (x, y) pairs")
        return cls(pts[:, 0], pts[:, 1], source="pwl")

    @classmethod
    def from_config(cls, cfg: object) -> "MonotoneCurve":
        """Build a curve from its JSON object form.

        Accepted shapes: {"kind": "identity"},
        {"kind": "power", "exponent": p, "resolution": n} (resolution
        optional), {"kind": "pwl", "points": [[x, y], ...]}.
        """
        if not isinstance(cfg, dict):
            raise ConfigError("curve config must be an object")
        kind = cfg.get("kind")
        if kind == "identity":
            _reject_unknown(cfg, {"kind"}, "curve")
            return cls.identity()
        if kind == "power":
            _reject_unknown(cfg, {"kind", "exponent", "resolution"}, "curve")
            if "exponent" not in cfg:
                raise ConfigError("power curve config needs an 'exponent'")
            exponent = _number(cfg["exponent"], "exponent")
            resolution = int(_number(cfg.get("resolution", DEFAULT_POWER_RESOLUTION), "resolution"))
            return cls.power(exponent, resolution)
        if kind == "pwl":
            _reject_unknown(cfg, {"kind", "points"}, "curve")
            pts = cfg.get("points")
            if not isinstance(pts, list) or not pts:
                raise ConfigError("pwl curve config needs a 'points' list")
            return cls.from_points(pts)
        raise ConfigError(f"unknown curve kind {kind!r}")

    def to_config(self) -> dict:
        if self.source == "identity":
            return {"kind": "identity"}
        return {"kind": "pwl", "points": [[float(x), float(y)] for x, y in zip(self.xs, self.ys)]}

    @cached_property
    def as_pwl(self) -> PiecewiseLinearFn:
        return PiecewiseLinearFn(self.xs, self.ys)

    @cached_property
    def envelope(self) -> PiecewiseLinearFn:
        """Pointwise minimum of the curve with the identity.

        This is the largest value a section along the curve can take at
        each t. Crossings with the identity are breakpoints, so the
        minimum is exact, with exact zero slack wherever the curve runs
        above the identity.
        """
        return PiecewiseLinearFn(self.xs, np.minimum(self.xs, self.ys))

    def __call__(self, t):
        return self.as_pwl(t)

    def inverse(self, v):
        """Exact inverse: the y breakpoints are strictly increasing, so the
        inverse is the piecewise-linear function through the swapped
        coordinate lists."""
        arr = np.asarray(v, dtype=float)
        if np.min(np.atleast_1d(arr), initial=0.0) < 0.0 or np.max(np.atleast_1d(arr), initial=0.0) > 1.0:
            raise DomainError("inverse argument outside [0, 1]")
        out = np.interp(arr, self.ys, self.xs)
        if arr.ndim == 0:
            return float(out)
        return out


def solve_curve_plus_identity(
    curve: MonotoneCurve,
    target: float,
    lo: float = 0.0,
    hi: float = 1.0,
    residual_tol: float = 1e-12,
    max_iter: int = 200,
) -> float:
    """Unique t in [lo, hi] with phi(t) + t = target, by bisection.

    The map t -> phi(t) + t is continuous and strictly increasing, so the
    solution is unique when bracketed. Endpoints are returned when the
    target falls at or beyond the bracket values.
    """
    if not (0.0 <= lo <= hi <= 1.0):
        raise DomainError(f"bad bracket [{lo:.12g}, {hi:.12g}]")
    flo = float(curve(lo)) + lo - target
    fhi = float(curve(hi)) + hi - target
    if flo >= 0.0:
        return lo
    if fhi <= 0.0:
        return hi
    a, b = lo, hi
    mid = 0.5 * (a + b)
    for _ in range(max_iter):
        mid = 0.5 * (a + b)
        r = float(curve(mid)) + mid - target
        if abs(r) <= residual_tol or b - a <= 4.0 * np.finfo(float).eps:
            break
        if r < 0.0:
            a = mid
        else:
            b = mid
    return mid


def m_phi(curve: MonotoneCurve) -> PiecewiseLinearFn:
    """The upper envelope min(t, phi(t)) of admissible section values.

    Exactly piecewise linear: identity crossings are breakpoints of
    every curve by construction.
    """
    return curve.envelope


def _reject_unknown(cfg: dict, allowed: set, what: str) -> None:
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(f"unknown {what} config fields: {sorted(unknown)}")


def _number(value: object, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number")
    return float(value)
