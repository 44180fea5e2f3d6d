"""Brute-force verification of copula and quasi-copula properties.

The copula check sweeps every cell of a uniform lattice and, when a
curve is attached to the surface, every rectangle spanned by two points
of the curve, since negative mass of a surface with piecewise-linear
data concentrates along the curve. A local refinement then polishes the
worst rectangle found.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .errors import DomainError
from .surfaces import Surface

#: Default tolerance for verdicts on rectangle volumes.
DEFAULT_TOL = 1e-9

#: Default lattice cell count per axis (101 points).
DEFAULT_GRID = 100


@dataclass(frozen=True)
class Rectangle:
    """An axis-parallel rectangle [u1, u2] x [v1, v2] in the unit square."""

    u1: float
    u2: float
    v1: float
    v2: float

    def __post_init__(self) -> None:
        ok = (0.0 <= self.u1 <= self.u2 <= 1.0
              and 0.0 <= self.v1 <= self.v2 <= 1.0)
        if not ok:
            raise DomainError(
                f"bad rectangle [{self.u1:.12g}, {self.u2:.12g}] x "
                f"[{self.v1:.12g}, {self.v2:.12g}]")

    def as_list(self) -> list[float]:
        return [self.u1, self.u2, self.v1, self.v2]


def volume(surface: Surface, rect: Rectangle) -> float:
    """The mass the surface assigns to the rectangle."""
    us = np.array([rect.u2, rect.u1, rect.u2, rect.u1])
    vs = np.array([rect.v2, rect.v2, rect.v1, rect.v1])
    c = surface.eval(us, vs)
    return float(c[0] - c[1] - c[2] + c[3])


def classify_rectangle(surface: Surface, rect: Rectangle,
                       tol: float = 1e-9) -> str:
    """Position of a rectangle relative to the surface's curve.

    "curve-anchored" means both (u1, v1) and (u2, v2) lie on the curve;
    "below-curve" and "above-curve" refer to the region v <= phi(u);
    otherwise "mixed". Surfaces without a curve are classified against
    the identity.
    """
    curve = surface.curve
    if curve is None:
        phi1, phi2 = rect.u1, rect.u2
    else:
        phi1, phi2 = float(curve(rect.u1)), float(curve(rect.u2))
    if abs(rect.v1 - phi1) <= tol and abs(rect.v2 - phi2) <= tol:
        return "curve-anchored"
    if rect.v2 <= phi1 + tol:
        return "below-curve"
    if rect.v1 >= phi2 - tol:
        return "above-curve"
    return "mixed"


@dataclass(frozen=True)
class VolumeReport:
    """A rectangle, its mass, and its position relative to the curve."""

    rectangle: Rectangle
    volume: float
    classification: str

    def to_dict(self) -> dict:
        return {"rect": self.rectangle.as_list(), "volume": self.volume,
                "class": self.classification}


@dataclass(frozen=True)
class QuasiReport:
    """Outcome of the boundary, monotonicity and Lipschitz checks."""

    passed: bool
    category: str | None = None
    u: float | None = None
    v: float | None = None
    defect: float = 0.0

    def to_dict(self) -> dict:
        witness = None
        if not self.passed:
            witness = {"kind": self.category, "u": self.u, "v": self.v,
                       "defect": self.defect}
        return {"pass": self.passed, "witness": witness}


@dataclass(frozen=True)
class CopulaReport:
    """Outcome of the rectangle sweep; worst is kept even on a pass."""

    passed: bool
    worst: VolumeReport
    min_volume: float

    def to_dict(self) -> dict:
        return {"pass": self.passed, "min_volume": self.min_volume,
                "witness": None if self.passed else self.worst.to_dict()}


def check_quasi(surface: Surface, grid_n: int = DEFAULT_GRID,
                tol: float = DEFAULT_TOL) -> QuasiReport:
    """Check boundary values, monotonicity and the 1-Lipschitz property
    on a uniform lattice. The first failing category is reported."""
    us, vs, z = surface.grid(grid_n)
    step = us[1] - us[0]

    edges = [(z[:, 0], np.zeros_like(us), us, np.zeros_like(us)),
             (z[0, :], np.zeros_like(vs), np.zeros_like(vs), vs),
             (z[:, -1], us, us, np.ones_like(us)),
             (z[-1, :], vs, np.ones_like(vs), vs)]
    for got, want, eu, ev in edges:
        dev = np.abs(got - want)
        k = int(np.argmax(dev))
        if dev[k] > tol:
            return QuasiReport(False, "C1", float(eu[k]), float(ev[k]),
                               float(dev[k]))

    du = np.diff(z, axis=0)
    dv = np.diff(z, axis=1)
    for diffs, axis in ((du, 0), (dv, 1)):
        k = np.unravel_index(int(np.argmin(diffs)), diffs.shape)
        if diffs[k] < -tol:
            i, j = (k[0] + 1, k[1]) if axis == 0 else (k[0], k[1] + 1)
            return QuasiReport(False, "Q1", float(us[i]), float(vs[j]),
                               float(-diffs[k]))
    for diffs, axis in ((du, 0), (dv, 1)):
        k = np.unravel_index(int(np.argmax(diffs)), diffs.shape)
        if diffs[k] > step + tol:
            i, j = (k[0] + 1, k[1]) if axis == 0 else (k[0], k[1] + 1)
            return QuasiReport(False, "Q2", float(us[i]), float(vs[j]),
                               float(diffs[k] - step))
    return QuasiReport(True)


def _cell_sweep(surface: Surface, grid_n: int):
    us, vs, z = surface.grid(grid_n)
    vols = z[1:, 1:] - z[:-1, 1:] - z[1:, :-1] + z[:-1, :-1]
    k = np.unravel_index(int(np.argmin(vols)), vols.shape)
    rect = Rectangle(float(us[k[0]]), float(us[k[0] + 1]),
                     float(vs[k[1]]), float(vs[k[1] + 1]))
    return rect, float(vols[k])


def _curve_sweep(surface: Surface, grid_n: int):
    """Worst rectangle spanned by two curve points, or None without a curve.

    Anchoring points are the lattice knots merged with the section (or
    curve) breakpoints, so interval knots are hit exactly.
    """
    curve = surface.curve
    if curve is None:
        return None
    if surface.section is not None:
        nodes = surface.section.values.xs
    else:
        nodes = curve.xs
    ts = np.union1d(nodes, np.linspace(0.0, 1.0, int(grid_n) + 1))
    phis = curve(ts)
    cm = surface.eval(ts[:, None], phis[None, :])
    diag = np.diag(cm)
    vols = diag[None, :] + diag[:, None] - cm - cm.T
    iu = np.triu_indices(len(ts), k=1)
    if iu[0].size == 0:
        return None
    flat = vols[iu]
    k = int(np.argmin(flat))
    i, j = int(iu[0][k]), int(iu[1][k])
    rect = Rectangle(float(ts[i]), float(ts[j]), float(phis[i]), float(phis[j]))
    return rect, float(flat[k])


#: All 81 coordinate perturbation patterns used by the local refinement.
_OFFSETS = np.array(list(product((-1.0, 0.0, 1.0), repeat=4)))


def find_worst_rectangle(surface: Surface, grid_n: int = DEFAULT_GRID,
                         rounds: int = 3) -> VolumeReport:
    """Lowest-mass rectangle: lattice and curve sweeps, then a local
    coordinate refinement of the worst candidate.

    Each refinement round perturbs every rectangle coordinate by
    -h, 0, +h and keeps strict improvements; h starts at the lattice
    spacing and halves per round. Deterministic for fixed inputs.
    """
    rect, vol = _cell_sweep(surface, grid_n)
    anchored = _curve_sweep(surface, grid_n)
    if anchored is not None and anchored[1] < vol:
        rect, vol = anchored
    h = 1.0 / grid_n
    for _ in range(int(rounds)):
        for _ in range(100):
            cand = np.clip(np.array(rect.as_list()) + h * _OFFSETS, 0.0, 1.0)
            valid = (cand[:, 0] < cand[:, 1]) & (cand[:, 2] < cand[:, 3])
            cand = cand[valid]
            u1, u2, v1, v2 = cand[:, 0], cand[:, 1], cand[:, 2], cand[:, 3]
            vols = (surface.eval(u2, v2) - surface.eval(u1, v2)
                    - surface.eval(u2, v1) + surface.eval(u1, v1))
            k = int(np.argmin(vols))
            if vols[k] >= vol:
                break
            vol = float(vols[k])
            rect = Rectangle(float(u1[k]), float(u2[k]),
                             float(v1[k]), float(v2[k]))
        h *= 0.5
    return VolumeReport(rect, vol, classify_rectangle(surface, rect))


def check_copula(surface: Surface, grid_n: int = DEFAULT_GRID,
                 tol: float = DEFAULT_TOL) -> CopulaReport:
    """Decide 2-increasingness by sweeping lattice cells and, when a
    curve is attached, all rectangles spanned by two curve points."""
    rect, vol = _cell_sweep(surface, grid_n)
    anchored = _curve_sweep(surface, grid_n)
    if anchored is not None and anchored[1] < vol:
        rect, vol = anchored
    report = VolumeReport(rect, vol, classify_rectangle(surface, rect))
    return CopulaReport(vol >= -tol, report, vol)
