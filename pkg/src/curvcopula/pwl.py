"""Piecewise-linear functions on [0, 1] with exact interval extrema."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Sequence

import numpy as np

from .errors import DomainError, IntervalError

#: Minimum spacing between consecutive x breakpoints.
MIN_STEP = 1e-12

Which = Literal["min", "max"]


def _unit_check(values: np.ndarray, name: str) -> None:
    if values.size and (np.min(values) < 0.0 or np.max(values) > 1.0):
        raise DomainError(f"{name} outside [0, 1]")


@dataclass(frozen=True, eq=False)
class PiecewiseLinearFn:
    """A continuous piecewise-linear function given by breakpoints on [0, 1].

    Breakpoint x coordinates are strictly increasing and span exactly
    [0, 1]; values between breakpoints come from linear interpolation.
    Extrema over any closed subinterval are therefore attained at the
    subinterval ends or at interior breakpoints, which makes interval
    extremum queries exact.
    """

    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self) -> None:
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 2:
            raise DomainError("breakpoints must be two 1-d arrays of equal length >= 2")
        if xs[0] != 0.0 or xs[-1] != 1.0:
            raise DomainError("x breakpoints must span [0, 1] exactly")
        if np.min(np.diff(xs)) < MIN_STEP:
            raise DomainError("x breakpoints must be strictly increasing")
        if not np.all(np.isfinite(ys)):
            raise DomainError("breakpoint values must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    @classmethod
    def from_points(cls, points: Iterable[Sequence[float]]) -> "PiecewiseLinearFn":
        pts = np.asarray(list(points), dtype=float)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise DomainError("points must be a sequence of (x, y) pairs")
        order = np.argsort(pts[:, 0], kind="stable")
        return cls(pts[order, 0], pts[order, 1])

    @classmethod
    def from_samples(cls, fn: Callable[[np.ndarray], np.ndarray], xs) -> "PiecewiseLinearFn":
        xs = np.asarray(xs, dtype=float)
        return cls(xs, np.asarray(fn(xs), dtype=float))

    def __call__(self, t):
        arr = np.asarray(t, dtype=float)
        _unit_check(np.atleast_1d(arr), "evaluation point")
        out = np.interp(arr, self.xs, self.ys)
        if arr.ndim == 0:
            return float(out)
        return out

    def refined(self, extra) -> "PiecewiseLinearFn":
        """Same function with additional breakpoints inserted.

        Extra points closer than the minimum spacing to an existing
        breakpoint (or to each other) are dropped; values at kept points
        are interpolated, so the function is unchanged.
        """
        extra = np.atleast_1d(np.asarray(extra, dtype=float))
        _unit_check(extra, "breakpoint")
        extra = np.unique(extra)
        pos = np.searchsorted(self.xs, extra)
        left = extra - self.xs[np.maximum(pos - 1, 0)]
        right = self.xs[np.minimum(pos, self.xs.size - 1)] - extra
        extra = extra[(np.abs(left) >= MIN_STEP) & (np.abs(right) >= MIN_STEP)]
        if extra.size > 1:
            keep = np.concatenate(([True], np.diff(extra) >= MIN_STEP))
            extra = extra[keep]
        if not extra.size:
            return self
        xs = np.sort(np.concatenate([self.xs, extra]))
        return PiecewiseLinearFn(xs, np.interp(xs, self.xs, self.ys))

    def extremum_on(self, lo: float, hi: float, which: Which = "max") -> tuple[float, float]:
        """Exact extremum over [lo, hi]; returns (location, value).

        The extremum is attained at lo, hi or an interior breakpoint;
        ties report the smallest location.
        """
        if which not in ("min", "max"):
            raise ValueError(f"which must be 'min' or 'max', got {which!r}")
        if not (0.0 <= lo <= hi <= 1.0):
            raise IntervalError(f"bad interval [{lo:.12g}, {hi:.12g}]")
        i = np.searchsorted(self.xs, lo, side="right")
        j = np.searchsorted(self.xs, hi, side="left")
        ts = np.concatenate(([lo], self.xs[i:j], [hi]))
        vals = np.concatenate((
            [np.interp(lo, self.xs, self.ys)],
            self.ys[i:j],
            [np.interp(hi, self.xs, self.ys)],
        ))
        k = int(np.argmax(vals)) if which == "max" else int(np.argmin(vals))
        return float(ts[k]), float(vals[k])


class RangeExtremumTable:
    """Vectorized range extrema over many subintervals of one function.

    A sparse table over the breakpoint values gives the extremum of a
    piecewise-linear function over [lo_k, hi_k] in O(1) per query after an
    O(n log n) build: endpoint values are interpolated, interior
    breakpoints are looked up in the table. Exactness matters downstream,
    so node values are never recomputed, only gathered.
    """

    def __init__(self, f: PiecewiseLinearFn, which: Which = "max"):
        if which not in ("min", "max"):
            raise ValueError(f"which must be 'min' or 'max', got {which!r}")
        self.f = f
        self.which = which
        vals = f.ys if which == "max" else -f.ys
        levels = [vals]
        width = 1
        while 2 * width <= vals.size:
            prev = levels[-1]
            levels.append(np.maximum(prev[:-width], prev[width:]))
            width *= 2
        self._levels = levels

    def _inner(self, i: np.ndarray, j: np.ndarray) -> np.ndarray:
        """Table max over index range [i, j]; -inf where the range is empty."""
        out = np.full(i.shape, -np.inf)
        nonempty = j >= i
        if not np.any(nonempty):
            return out
        length = np.where(nonempty, j - i + 1, 1)
        lev = np.frexp(length)[1] - 1
        for level, tab in enumerate(self._levels):
            m = nonempty & (lev == level)
            if np.any(m):
                w = 1 << level
                out[m] = np.maximum(tab[i[m]], tab[j[m] - w + 1])
        return out

    def query(self, lo, hi):
        lo, hi = np.broadcast_arrays(np.asarray(lo, dtype=float),
                                     np.asarray(hi, dtype=float))
        scalar = lo.ndim == 0
        lo = np.minimum(lo, hi)
        shape = lo.shape
        lo = np.atleast_1d(lo).ravel()
        hi = np.atleast_1d(hi).ravel()
        xs, ys = self.f.xs, self.f.ys
        fa = np.interp(lo, xs, ys)
        fb = np.interp(hi, xs, ys)
        i = np.searchsorted(xs, lo, side="right")
        j = np.searchsorted(xs, hi, side="left") - 1
        if self.which == "max":
            out = np.maximum(np.maximum(fa, fb), self._inner(i, j))
        else:
            out = np.minimum(np.minimum(fa, fb), -self._inner(i, j))
        return float(out[0]) if scalar else out.reshape(shape)
