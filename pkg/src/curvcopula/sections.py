"""Sections along a curve: admissible traces of quasi-copulas.

The section of a quasi-copula Q along a curve phi is the function
t -> Q(t, phi(t)). A function Gamma is such a section exactly when it is
squeezed between max(0, t + phi(t) - 1) and min(t, phi(t)), is
increasing, and Gamma(t) - t - phi(t) is decreasing. This module
validates candidates, builds the named families (envelope, smallest
section, product trace, interval-determined sections), and checks the
compatibility condition between a curve and a family of intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Literal, Sequence

import numpy as np

from .curves import MonotoneCurve, solve_curve_plus_identity
from .errors import ConfigError, DisjointnessError, DomainError, PropertyViolation
from .pwl import PiecewiseLinearFn

#: Absolute tolerance for section property checks.
DEFAULT_TOL = 1e-9

#: Interval families are stored as finite truncations up to this size.
MAX_INTERVALS = 64

#: Default uniform refinement when tracing non-polygonal data onto a curve.
DEFAULT_TRACE_RESOLUTION = 1025


@dataclass(frozen=True)
class SectionPiece:
    """A tagged span of a section: flat, shifted diagonal, or on the envelope.

    For "flat" pieces, level is the constant value. For "shifted" pieces,
    level is the constant c with the section equal to phi(t) + t - c.
    """

    kind: Literal["flat", "shifted", "envelope"]
    lo: float
    hi: float
    level: float | None = None


@dataclass(frozen=True)
class GapInterval:
    """One open interval ]lo, hi[ together with its interior knot."""

    lo: float
    knot: float
    hi: float


@dataclass(frozen=True)
class Incompatibility:
    """A failing interval pair: envelope(a_j) < max(b_i, phi(b_i)).

    Interval indices are 1-based, matching the reported JSON form.
    """

    i: int
    j: int
    lhs: float
    rhs: float

    def to_dict(self) -> dict:
        return {"kind": "Incompatible", "i": self.i, "j": self.j,
                "lhs": self.lhs, "rhs": self.rhs}


@dataclass(frozen=True)
class IntervalFamily:
    """A sorted family of pairwise disjoint open intervals with knots."""

    intervals: tuple[GapInterval, ...]

    def __post_init__(self) -> None:
        if len(self.intervals) > MAX_INTERVALS:
            raise DomainError(
                f"interval family exceeds the cap of {MAX_INTERVALS} intervals")
        prev_hi = 0.0
        first = True
        for iv in self.intervals:
            if not (0.0 <= iv.lo < iv.hi <= 1.0):
                raise DomainError(f"bad interval ]{iv.lo:.12g}, {iv.hi:.12g}[")
            if not (iv.lo < iv.knot < iv.hi):
                raise DomainError(
                    f"knot {iv.knot:.12g} outside ]{iv.lo:.12g}, {iv.hi:.12g}[")
            if not first and iv.lo < prev_hi:
                raise DisjointnessError(
                    f"intervals overlap near {iv.lo:.12g}")
            prev_hi = iv.hi
            first = False

    def pairs(self) -> list[tuple[float, float]]:
        return [(iv.lo, iv.hi) for iv in self.intervals]

    def to_json_obj(self) -> list[list[float]]:
        return [[iv.lo, iv.knot, iv.hi] for iv in self.intervals]

    @classmethod
    def solve(cls, curve: MonotoneCurve, pairs: Iterable[Sequence[float]]) -> "IntervalFamily":
        """Build a family from (a, b) pairs, solving each interior knot.

        The knot of ]a, b[ is the unique solution of
        phi(t) + t = envelope(a) + max(b, phi(b)).
        """
        cleaned = []
        for pair in pairs:
            a, b = (float(pair[0]), float(pair[1]))
            if not (0.0 <= a < b <= 1.0):
                raise DomainError(f"bad interval ]{a:.12g}, {b:.12g}[")
            cleaned.append((a, b))
        cleaned.sort()
        env = curve.envelope
        intervals = []
        for a, b in cleaned:
            target = float(env(a)) + max(b, float(curve(b)))
            knot = solve_curve_plus_identity(curve, target, a, b)
            intervals.append(GapInterval(a, knot, b))
        return cls(tuple(intervals))


@dataclass(frozen=True, eq=False)
class CurvilinearSection:
    """A validated section along a curve, stored piecewise linearly.

    The value grid always contains the curve breakpoints, so the
    difference functions below are exact piecewise-linear objects on the
    same grid.
    """

    curve: MonotoneCurve
    values: PiecewiseLinearFn
    pieces: tuple[SectionPiece, ...] | None = None

    def __call__(self, t):
        return self.values(t)

    @cached_property
    def slack_below_identity(self) -> PiecewiseLinearFn:
        """t - Gamma(t); nonnegative, zero where the section rides the identity."""
        xs = self.values.xs
        return PiecewiseLinearFn(xs, xs - self.values.ys)

    @cached_property
    def slack_below_curve(self) -> PiecewiseLinearFn:
        """phi(t) - Gamma(t); nonnegative, zero where the section rides the curve."""
        xs = self.values.xs
        return PiecewiseLinearFn(xs, self.curve(xs) - self.values.ys)

    @cached_property
    def envelope_gap(self) -> PiecewiseLinearFn:
        """min(t, phi(t)) - Gamma(t); zero exactly where the section touches its ceiling."""
        xs = self.values.xs
        return PiecewiseLinearFn(xs, self.curve.envelope(xs) - self.values.ys)


def validate_section(
    curve: MonotoneCurve,
    values: PiecewiseLinearFn,
    tol: float = DEFAULT_TOL,
    pieces: Sequence[SectionPiece] | None = None,
) -> CurvilinearSection:
    """Validate candidate section values and bind them to the curve.

    The checks run on the union of the curve and value breakpoints,
    where they are exact for piecewise-linear data: monotonicity, the
    decrease of Gamma(t) - t - phi(t), then the envelope bounds on both
    sides. Endpoint values within tol of 0 and 1 are pinned exactly.

    Raises
    ------
    PropertyViolation
        With the failing property name, location and both sides.
    """
    refined = values.refined(curve.xs)
    xs = refined.xs
    g = refined.ys.copy()
    phi = curve(xs)
    env = curve.envelope(xs)
    if abs(g[0]) > tol:
        raise PropertyViolation("bound", 0.0, g[0], 0.0)
    if abs(g[-1] - 1.0) > tol:
        raise PropertyViolation("bound", 1.0, g[-1], 1.0)
    g[0], g[-1] = 0.0, 1.0
    dg = np.diff(g)
    k = int(np.argmin(dg))
    if dg[k] < -tol:
        raise PropertyViolation("monotone", xs[k + 1], g[k + 1], g[k])
    h = g - xs - phi
    dh = np.diff(h)
    k = int(np.argmax(dh))
    if dh[k] > tol:
        raise PropertyViolation("colipschitz", xs[k + 1], h[k + 1], h[k])
    over = g - env
    k = int(np.argmax(over))
    if over[k] > tol:
        raise PropertyViolation("bound", xs[k], g[k], env[k])
    lower = np.maximum(0.0, xs + phi - 1.0)
    under = lower - g
    k = int(np.argmax(under))
    if under[k] > tol:
        raise PropertyViolation("bound", xs[k], g[k], lower[k])
    return CurvilinearSection(curve, PiecewiseLinearFn(xs, g),
                              pieces=tuple(pieces) if pieces is not None else None)


def envelope_section(curve: MonotoneCurve) -> CurvilinearSection:
    """The largest admissible section, min(t, phi(t))."""
    return CurvilinearSection(
        curve, curve.envelope, pieces=(SectionPiece("envelope", 0.0, 1.0),))


def w_section(curve: MonotoneCurve) -> CurvilinearSection:
    """The smallest admissible section, max(0, t + phi(t) - 1).

    Equivalently the section determined by the single interval ]0, 1[.
    """
    section, _ = determined_section(curve, [(0.0, 1.0)])
    return section


def product_section(curve: MonotoneCurve,
                    resolution: int = DEFAULT_TRACE_RESOLUTION) -> CurvilinearSection:
    """The section of the independence surface, t * phi(t), sampled onto the
    union of the curve breakpoints and a uniform grid."""
    ts = curve.as_pwl.refined(np.linspace(0.0, 1.0, int(resolution))).xs
    return validate_section(curve, PiecewiseLinearFn(ts, ts * curve(ts)))


def section_from_copula(
    curve: MonotoneCurve,
    surface,
    resolution: int = DEFAULT_TRACE_RESOLUTION,
    tol: float = DEFAULT_TOL,
) -> CurvilinearSection:
    """Trace a surface along the curve: t -> surface(t, phi(t)).

    `surface` is any object with a vectorized eval(u, v). Sampling uses
    the union of the curve breakpoints and a uniform grid, and the trace
    must pass section validation.
    """
    ts = curve.as_pwl.refined(np.linspace(0.0, 1.0, int(resolution))).xs
    vals = np.asarray(surface.eval(ts, curve(ts)), dtype=float)
    return validate_section(curve, PiecewiseLinearFn(ts, vals), tol=tol)


def determined_section(
    curve: MonotoneCurve,
    intervals: Iterable[Sequence[float]],
    max_intervals: int = MAX_INTERVALS,
) -> tuple[CurvilinearSection, IntervalFamily]:
    """Assemble the section determined by disjoint open intervals.

    On each ]a, b[ the section leaves the envelope with the constant
    value envelope(a) up to an interior knot, then follows
    phi(t) + t - max(b, phi(b)) back to the envelope at b; elsewhere it
    equals the envelope. The knot solves
    phi(t) + t = envelope(a) + max(b, phi(b)) and is inserted as a
    breakpoint, so the result is exactly piecewise linear.

    Returns (section, family) with the solved knots in the family.
    """
    pairs = [(float(p[0]), float(p[1])) for p in intervals]
    if len(pairs) > max_intervals:
        raise DomainError(f"more than {max_intervals} intervals")
    family = IntervalFamily.solve(curve, pairs)
    extra = [x for iv in family.intervals for x in (iv.lo, iv.knot, iv.hi)]
    base = curve.as_pwl.refined(np.array(extra))
    grid = base.xs
    phi = curve(grid)
    env = curve.envelope(grid)
    vals = env.copy()
    pieces: list[SectionPiece] = []
    cursor = 0.0
    for iv in family.intervals:
        level = float(curve.envelope(iv.lo))
        cap = max(iv.hi, float(curve(iv.hi)))
        flat = (grid >= iv.lo) & (grid <= iv.knot)
        vals[flat] = level
        shifted = (grid > iv.knot) & (grid < iv.hi)
        vals[shifted] = grid[shifted] + phi[shifted] - cap
        if iv.lo > cursor:
            pieces.append(SectionPiece("envelope", cursor, iv.lo))
        pieces.append(SectionPiece("flat", iv.lo, iv.knot, level=level))
        pieces.append(SectionPiece("shifted", iv.knot, iv.hi, level=cap))
        cursor = iv.hi
    if cursor < 1.0:
        pieces.append(SectionPiece("envelope", cursor, 1.0))
    section = CurvilinearSection(curve, PiecewiseLinearFn(grid, vals),
                                 pieces=tuple(pieces))
    return section, family


def compatibility_check(
    curve: MonotoneCurve,
    family: IntervalFamily,
    tol: float = DEFAULT_TOL,
) -> Incompatibility | None:
    """Check envelope(a_j) >= max(b_i, phi(b_i)) for every ordered pair.

    The family is sorted and disjoint, so each left endpoint only needs
    comparing against the running maximum of max(b_i, phi(b_i)) over
    earlier intervals. Returns None when compatible, else the first
    failing pair (1-based indices).
    """
    env = curve.envelope
    ivs = family.intervals
    best = -np.inf
    best_i = 0
    for j in range(1, len(ivs)):
        prev = ivs[j - 1]
        cap = max(prev.hi, float(curve(prev.hi)))
        if cap > best:
            best, best_i = cap, j - 1
        lhs = float(env(ivs[j].lo))
        if lhs < best - tol:
            return Incompatibility(best_i + 1, j + 1, lhs, best)
    return None


def generate_compatible_family(
    curve: MonotoneCurve,
    a1: float,
    b1: float,
    n: int,
) -> IntervalFamily:
    """First n intervals of the expanding recursion
    a_{k+1} = max(phi(b_k), phi^{-1}(b_k)), b_{k+1} = (1 + a_{k+1}) / 2.

    Families produced this way are pairwise disjoint and compatible with
    the curve; consecutive pairs sit exactly at the compatibility
    boundary.
    """
    if not (0.0 < a1 < b1 < 1.0):
        raise DomainError(f"need 0 < a1 < b1 < 1, got a1={a1!r}, b1={b1!r}")
    if not (1 <= int(n) <= MAX_INTERVALS):
        raise DomainError(f"interval count must be in [1, {MAX_INTERVALS}]")
    pairs = [(float(a1), float(b1))]
    a, b = float(a1), float(b1)
    for _ in range(int(n) - 1):
        a = max(float(curve(b)), float(curve.inverse(b)))
        b = 0.5 * (1.0 + a)
        pairs.append((a, b))
    return IntervalFamily.solve(curve, pairs)


def section_from_config(curve: MonotoneCurve, cfg: object,
                        tol: float = DEFAULT_TOL) -> CurvilinearSection:
    """Build a section from its JSON object form.

    Accepted shapes: {"kind": "m_phi"}, {"kind": "w_section"},
    {"kind": "product"}, {"kind": "determined", "intervals": [[a, b], ...]},
    {"kind": "pwl", "points": [[t, y], ...]}.
    """
    if not isinstance(cfg, dict):
        raise ConfigError("section config must be an object")
    kind = cfg.get("kind")
    if kind == "m_phi":
        _only_keys(cfg, {"kind"})
        return envelope_section(curve)
    if kind == "w_section":
        _only_keys(cfg, {"kind"})
        return w_section(curve)
    if kind == "product":
        _only_keys(cfg, {"kind"})
        return product_section(curve)
    if kind == "determined":
        _only_keys(cfg, {"kind", "intervals"})
        ivs = cfg.get("intervals")
        if not isinstance(ivs, list) or not ivs:
            raise ConfigError("determined section config needs an 'intervals' list")
        section, _ = determined_section(curve, ivs)
        return section
    if kind == "pwl":
        _only_keys(cfg, {"kind", "points"})
        pts = cfg.get("points")
        if not isinstance(pts, list) or not pts:
            raise ConfigError("pwl section config needs a 'points' list")
        return validate_section(curve, PiecewiseLinearFn.from_points(pts), tol=tol)
    raise ConfigError(f"unknown section kind {kind!r}")


def _only_keys(cfg: dict, allowed: set) -> None:
    unknown = set(cfg) - allowed
    if unknown:
        raise ConfigError(f"unknown section config fields: {sorted(unknown)}")
