"""Quasi-copula surfaces on the unit square.

Besides the three classical baselines, this module builds the two
extremal quasi-copulas with a prescribed section along a curve: the
pointwise greatest one and the pointwise smallest one (a Bertino-type
surface, which is always a copula). Both reduce to range extrema of the
two slack functions t - Gamma(t) and phi(t) - Gamma(t), so evaluation
is exact at breakpoints and O(1) per query after preprocessing.
"""

from __future__ import annotations

import numpy as np

from .curves import MonotoneCurve, solve_curve_plus_identity
from .errors import ConfigError, DomainError
from .pwl import RangeExtremumTable
from .sections import CurvilinearSection


def _as_unit(values, name: str) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if arr.size and (np.min(arr) < 0.0 or np.max(arr) > 1.0):
        raise DomainError(f"{name} outside the unit interval")
    return arr


class Surface:
    """Base for evaluatable surfaces; subclasses define eval(u, v)."""

    kind: str = "surface"
    curve: MonotoneCurve | None = None
    section: CurvilinearSection | None = None

    def eval(self, u, v) -> np.ndarray:
        raise NotImplementedError

    def at(self, u: float, v: float) -> float:
        """Scalar evaluation with unit-square domain checking."""
        return float(self.eval(float(u), float(v)))

    def grid(self, n_cells: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Evaluate on the uniform (n_cells + 1)-point lattice per axis.

        Returns (us, vs, values) with values[i, j] = eval(us[i], vs[j]).
        """
        if int(n_cells) < 1:
            raise DomainError("grid needs at least one cell")
        us = np.linspace(0.0, 1.0, int(n_cells) + 1)
        uu, vv = np.meshgrid(us, us, indexing="ij")
        return us, us.copy(), self.eval(uu, vv)


class LowerFrechet(Surface):
    """max(u + v - 1, 0), the smallest quasi-copula."""

    kind = "W"

    def __init__(self, curve: MonotoneCurve | None = None):
        self.curve = curve

    def eval(self, u, v) -> np.ndarray:
        u = _as_unit(u, "u")
        v = _as_unit(v, "v")
        return np.maximum(u + v - 1.0, 0.0)


class UpperFrechet(Surface):
    """min(u, v), the greatest quasi-copula."""

    kind = "M"

    def __init__(self, curve: MonotoneCurve | None = None):
        self.curve = curve

    def eval(self, u, v) -> np.ndarray:
        u = _as_unit(u, "u")
        v = _as_unit(v, "v")
        return np.minimum(u, v)


class Independence(Surface):
    """The product u * v."""

    kind = "Pi"

    def __init__(self, curve: MonotoneCurve | None = None):
        self.curve = curve

    def eval(self, u, v) -> np.ndarray:
        u = _as_unit(u, "u")
        v = _as_unit(v, "v")
        return u * v


#: Shared baseline instances without an attached curve.
W = LowerFrechet()
M = UpperFrechet()
PI = Independence()


class _SectionBound(Surface):
    """Common machinery for the two extremal surfaces with a fixed section.

    Evaluation splits at the curve. With inv = phi^{-1}(v), the relevant
    slack is scanned over [inv, u] below the curve and [u, inv] above it;
    intervals are clamped to be nonempty so the curve itself belongs to
    both branches.
    """

    _which: str = "max"

    def __init__(self, section: CurvilinearSection):
        self.section = section
        self.curve = section.curve
        self._slack_id = section.slack_below_identity
        self._slack_curve = section.slack_below_curve
        self._table_id = RangeExtremumTable(self._slack_id, self._which)
        self._table_curve = RangeExtremumTable(self._slack_curve, self._which)

    def _branches(self, u, v):
        u = _as_unit(u, "u")
        v = _as_unit(v, "v")
        u, v = np.broadcast_arrays(u, v)
        inv = self.curve.inverse(v)
        below = v <= self.curve(u)
        lo = np.minimum(inv, u)
        hi = np.maximum(inv, u)
        return u, v, below, lo, hi


class UpperBoundSurface(_SectionBound):
    """The pointwise greatest quasi-copula with the given section.

    Below the curve it equals min(v, u - max slack of t - Gamma(t));
    above, min(u, v - max slack of phi(t) - Gamma(t)). It is a copula
    exactly when the section passes the interval characterization.
    """

    kind = "upper"
    _which = "max"

    def eval(self, u, v) -> np.ndarray:
        u, v, below, lo, hi = self._branches(u, v)
        ext_id = np.maximum(self._table_id.query(lo, u), 0.0)
        ext_curve = np.maximum(self._table_curve.query(u, hi), 0.0)
        out = np.where(below,
                       np.minimum(v, u - ext_id),
                       np.minimum(u, v - ext_curve))
        return np.clip(out, 0.0, 1.0)


class BertinoSurface(_SectionBound):
    """The pointwise smallest quasi-copula with the given section.

    Below the curve it equals v - min slack of phi(t) - Gamma(t); above,
    u - min slack of t - Gamma(t). This surface is a copula for every
    admissible section.
    """

    kind = "bertino"
    _which = "min"

    def eval(self, u, v) -> np.ndarray:
        u, v, below, lo, hi = self._branches(u, v)
        ext_curve = np.maximum(self._table_curve.query(lo, u), 0.0)
        ext_id = np.maximum(self._table_id.query(u, hi), 0.0)
        out = np.where(below, v - ext_curve, u - ext_id)
        return np.clip(out, 0.0, 1.0)


class WSectionUpperBound(Surface):
    """Closed form of the greatest quasi-copula whose section is the
    smallest admissible one, max(0, t + phi(t) - 1).

    With t_star the solution of t + phi(t) = 1, the surface deviates
    from the lower Frechet bound only on the two open slabs where t_star
    separates u from phi^{-1}(v).
    """

    kind = "w_upper"

    def __init__(self, curve: MonotoneCurve):
        self.curve = curve
        self.t_star = solve_curve_plus_identity(curve, 1.0)
        self.phi_star = float(curve(self.t_star))

    def eval(self, u, v) -> np.ndarray:
        u = _as_unit(u, "u")
        v = _as_unit(v, "v")
        u, v = np.broadcast_arrays(u, v)
        inv = self.curve.inverse(v)
        out = np.maximum(u + v - 1.0, 0.0)
        first = (inv < self.t_star) & (self.t_star < u)
        second = (u < self.t_star) & (self.t_star < inv)
        out = np.where(first, np.minimum(v, u - self.t_star), out)
        out = np.where(second, np.minimum(u, v - self.phi_star), out)
        return np.clip(out, 0.0, 1.0)


def w_section_closed_form(curve: MonotoneCurve, u, v) -> np.ndarray:
    """Convenience wrapper around WSectionUpperBound.eval."""
    return WSectionUpperBound(curve).eval(u, v)


_BASELINES = {"W": LowerFrechet, "M": UpperFrechet, "Pi": Independence}


def build_surface(
    kind: str,
    curve: MonotoneCurve | None = None,
    section: CurvilinearSection | None = None,
) -> Surface:
    """Construct a surface by kind name.

    Kinds: "W", "M", "Pi" (baselines; a curve may be attached for
    rectangle classification), "upper" and "bertino" (need a section),
    "w_upper" (needs a curve).
    """
    if kind in _BASELINES:
        return _BASELINES[kind](curve)
    if kind == "upper":
        if section is None:
            raise ConfigError("surface kind 'upper' needs a section")
        return UpperBoundSurface(section)
    if kind == "bertino":
        if section is None:
            raise ConfigError("surface kind 'bertino' needs a section")
        return BertinoSurface(section)
    if kind == "w_upper":
        if curve is None:
            raise ConfigError("surface kind 'w_upper' needs a curve")
        return WSectionUpperBound(curve)
    raise ConfigError(f"unknown surface kind {kind!r}")


def write_grid_csv(surface: Surface, n_cells: int, path: str) -> None:
    """Write eval values on the uniform lattice as CSV rows u,v,value.

    Rows run in row-major order with u as the outer index; numbers are
    formatted with 12 significant digits.
    """
    us, vs, values = surface.grid(n_cells)
    lines = ["u,v,value"]
    for i, uval in enumerate(us):
        for j, vval in enumerate(vs):
            lines.append(f"{uval:.12g},{vval:.12g},{values[i, j]:.12g}")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
