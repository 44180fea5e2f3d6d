"""Structural decision: is the greatest quasi-copula with a given
section a copula?

The decision never inspects the surface. It reads the section's gap set
{t : min(t, phi(t)) - Gamma(t) > 0}, checks that Gamma takes the
determined form on every gap interval (flat, then the shifted diagonal
phi(t) + t - const, with one interior knot), and checks the pairwise
compatibility inequality between consecutive intervals. The surface is
a copula exactly when the gap set is empty or both checks pass.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import MonotoneCurve, solve_curve_plus_identity
from .errors import DomainError
from .sections import (CurvilinearSection, GapInterval, Incompatibility,
                       IntervalFamily, compatibility_check, envelope_section)
from .surfaces import BertinoSurface

#: Threshold for "the section sits strictly below its envelope".
GAP_EPS = 1e-9

#: Tolerance for matching the determined form and for compatibility.
FORM_TOL = 1e-9

#: Interpolated gap boundaries this close to 0 or 1 clamp to the
#: endpoint; node-derived boundaries are exact and never move.
_EDGE_SNAP = 1e-8

#: Node values this close to zero count as exact envelope contact.
_NODE_ZERO = 1e-12


@dataclass(frozen=True)
class SectionIsEnvelope:
    """Trivial pass: the section equals min(t, phi(t)) everywhere."""

    def to_dict(self) -> dict:
        return {"kind": "SectionEqualsMphi"}


@dataclass(frozen=True)
class NotDetermined:
    """The section deviates from the determined form on a gap interval."""

    interval: tuple[float, float]
    t_witness: float
    deviation: float

    def to_dict(self) -> dict:
        return {"kind": "NotDetermined", "interval": list(self.interval),
                "t_witness": self.t_witness, "deviation": self.deviation}


@dataclass(frozen=True)
class GapDiagnostics:
    """Necessary-condition probes for one gap interval ]lo, hi[.

    a_star is the last point where the section still equals its value at
    lo; b_star is the first point where Gamma(t) - t - phi(t) reaches
    its value at hi. For determined sections both coincide with the
    interior knot.
    """

    lo: float
    hi: float
    a_star: float
    b_star: float
    monotone_ok: bool
    colipschitz_strict_ok: bool
    knot_merge_ok: bool
    prop2_ok: bool

    def to_dict(self) -> dict:
        return {"interval": [self.lo, self.hi], "a_star": self.a_star,
                "b_star": self.b_star, "monotone_ok": self.monotone_ok,
                "colipschitz_strict_ok": self.colipschitz_strict_ok,
                "knot_merge_ok": self.knot_merge_ok,
                "prop2_ok": self.prop2_ok}


@dataclass(frozen=True)
class NecessityDiagnostics:
    """Per-gap necessary-condition reports."""

    gaps: tuple[GapDiagnostics, ...]

    def to_dict(self) -> dict:
        return {"gaps": [g.to_dict() for g in self.gaps]}

    def all_ok(self) -> bool:
        return all(g.monotone_ok and g.colipschitz_strict_ok
                   and g.knot_merge_ok and g.prop2_ok for g in self.gaps)


@dataclass(frozen=True)
class CharacterizationVerdict:
    """Outcome of decide() in both object and JSON form."""

    is_copula: bool
    family: IntervalFamily | None
    reason: SectionIsEnvelope | NotDetermined | Incompatibility | None
    diagnostics: NecessityDiagnostics | None
    meta: dict

    def to_dict(self) -> dict:
        return {
            "copula": self.is_copula,
            "intervals": self.family.to_json_obj() if self.family else [],
            "reason": self.reason.to_dict() if self.reason else None,
            "diagnostics": (self.diagnostics.to_dict()
                            if self.diagnostics else {"gaps": []}),
            "meta": self.meta,
        }


def extract_gap_intervals(section: CurvilinearSection,
                          eps: float = GAP_EPS) -> list[tuple[float, float]]:
    """Maximal open intervals where the envelope gap exceeds eps.

    Boundaries are taken from the sign structure of the piecewise-linear
    gap: an adjacent node with an exactly-zero gap is used as the
    boundary; otherwise the eps level crossing is interpolated, and
    interpolated crossings within 1e-8 of 0 or 1 clamp to the endpoint.
    """
    gap = section.envelope_gap
    xs, z = gap.xs, gap.ys
    inside = z > eps
    pairs: list[tuple[float, float]] = []
    n = len(xs)
    k = 0
    while k < n:
        if not inside[k]:
            k += 1
            continue
        k2 = k
        while k2 + 1 < n and inside[k2 + 1]:
            k2 += 1
        if k == 0:
            lo = 0.0
        elif z[k - 1] <= _NODE_ZERO:
            lo = float(xs[k - 1])
        else:
            frac = (eps - z[k - 1]) / (z[k] - z[k - 1])
            lo = float(xs[k - 1] + frac * (xs[k] - xs[k - 1]))
            if lo < _EDGE_SNAP:
                lo = 0.0
        if k2 == n - 1:
            hi = 1.0
        elif z[k2 + 1] <= _NODE_ZERO:
            hi = float(xs[k2 + 1])
        else:
            frac = (z[k2] - eps) / (z[k2] - z[k2 + 1])
            hi = float(xs[k2] + frac * (xs[k2 + 1] - xs[k2]))
            if hi > 1.0 - _EDGE_SNAP:
                hi = 1.0
        pairs.append((lo, hi))
        k = k2 + 1
    return pairs


def _gap_nodes(section: CurvilinearSection, lo: float, hi: float) -> np.ndarray:
    """Evaluation points for one gap: its boundaries plus interior nodes."""
    xs = section.values.xs
    i = int(np.searchsorted(xs, lo, side="right"))
    j = int(np.searchsorted(xs, hi, side="left"))
    return np.concatenate(([lo], xs[i:j], [hi]))


def decide(section: CurvilinearSection, gap_eps: float = GAP_EPS,
           form_tol: float = FORM_TOL,
           compat_tol: float = FORM_TOL) -> CharacterizationVerdict:
    """Decide whether the greatest quasi-copula with this section is a
    copula, purely from the section's structure.

    The determined form on a gap ]a, b[ is reconstructed from the
    section's own boundary values: flat level Gamma(a) and shift
    constant c = b + phi(b) - Gamma(b). The candidate
    max(level, t + phi(t) - c) is compared pointwise on the gap's nodes
    and at the solved knot. The verdict is relative to the section's
    breakpoint resolution: gaps entirely below gap_eps are invisible.
    """
    curve = section.curve
    pairs = extract_gap_intervals(section, gap_eps)
    meta = {
        "gap_threshold": gap_eps,
        "breakpoints": int(len(section.values.xs)),
        "note": "verdict is relative to the section's breakpoint resolution",
    }
    if not pairs:
        return CharacterizationVerdict(True, None, SectionIsEnvelope(),
                                       None, meta)
    diagnostics = diagnose_necessity(section, tol=compat_tol, _pairs=pairs)
    intervals = []
    for lo, hi in pairs:
        level = float(section(lo))
        shift = float(hi + curve(hi) - section(hi))
        knot = solve_curve_plus_identity(curve, level + shift, lo, hi)
        ts = _gap_nodes(section, lo, hi)
        form = np.maximum(level, ts + curve(ts) - shift)
        dev = np.abs(section(ts) - form)
        k = int(np.argmax(dev))
        knot_dev = abs(float(section(knot)) - level)
        if knot_dev > dev[k]:
            worst_t, worst = float(knot), knot_dev
        else:
            worst_t, worst = float(ts[k]), float(dev[k])
        if worst > form_tol:
            reason = NotDetermined((lo, hi), worst_t, worst)
            return CharacterizationVerdict(False, None, reason,
                                           diagnostics, meta)
        intervals.append(GapInterval(lo, knot, hi))
    family = IntervalFamily(tuple(intervals))
    clash = compatibility_check(curve, family, tol=compat_tol)
    if clash is not None:
        return CharacterizationVerdict(False, family, clash, diagnostics, meta)
    return CharacterizationVerdict(True, family, None, diagnostics, meta)


def diagnose_necessity(section: CurvilinearSection, tol: float = FORM_TOL,
                       _pairs: list[tuple[float, float]] | None = None
                       ) -> NecessityDiagnostics:
    """Probe each necessary condition on every gap interval.

    Reports, per gap: the flat-exit point a_star, the shift-entry point
    b_star, strict increase of Gamma on [a_star, hi], strict decrease of
    Gamma(t) - t - phi(t) on [lo, b_star], the knot merge a_star = b_star,
    and the boundary inequality against the previous gap.

    Raises DomainError when the section has no gap at all.
    """
    curve = section.curve
    pairs = _pairs if _pairs is not None else extract_gap_intervals(section)
    if not pairs:
        raise DomainError("section equals its envelope: no gap to diagnose")
    env = curve.envelope
    gaps = []
    prev_hi: float | None = None
    for lo, hi in pairs:
        ts = _gap_nodes(section, lo, hi)
        vals = np.asarray(section(ts), dtype=float)
        h = vals - ts - curve(ts)

        level = vals[0]
        at_level = np.nonzero(vals <= level + _NODE_ZERO)[0]
        a_star = float(ts[at_level[-1]])

        target = h[-1]
        reached = np.nonzero(h <= target + _NODE_ZERO)[0]
        b_star = float(ts[reached[0]])

        after = vals[ts >= a_star - _NODE_ZERO]
        monotone_ok = bool(np.all(np.diff(after) > 0.0))
        before = h[ts <= b_star + _NODE_ZERO]
        colipschitz_ok = bool(np.all(np.diff(before) < 0.0))
        knot_merge_ok = abs(a_star - b_star) <= tol
        if prev_hi is None:
            prop2_ok = True
        else:
            lhs = float(env(lo))
            rhs = max(prev_hi, float(curve(prev_hi)))
            prop2_ok = lhs >= rhs - tol
        gaps.append(GapDiagnostics(lo, hi, a_star, b_star, monotone_ok,
                                   colipschitz_ok, knot_merge_ok, prop2_ok))
        prev_hi = hi
    return NecessityDiagnostics(tuple(gaps))


@dataclass(frozen=True)
class BertinoComparison:
    """Grid comparison of the smallest envelope-section surface to min(u, v)."""

    equal: bool
    witness: tuple[float, float] | None
    bertino_value: float
    frechet_value: float
    max_deviation: float

    def to_dict(self) -> dict:
        return {"equal": self.equal,
                "witness": list(self.witness) if self.witness else None,
                "bertino_value": self.bertino_value,
                "frechet_value": self.frechet_value,
                "max_deviation": self.max_deviation}


def check_bertino_is_M(curve: MonotoneCurve, grid_n: int = 100,
                       tol: float = 1e-9) -> BertinoComparison:
    """Compare the smallest surface with the envelope section against
    min(u, v) on a uniform lattice.

    They agree exactly when the curve is the identity; otherwise the
    maximal deviation point is returned as a witness.
    """
    surface = BertinoSurface(envelope_section(curve))
    us, vs, z = surface.grid(grid_n)
    uu, vv = np.meshgrid(us, vs, indexing="ij")
    dev = np.minimum(uu, vv) - z
    k = np.unravel_index(int(np.argmax(dev)), dev.shape)
    worst = float(dev[k])
    if worst <= tol:
        return BertinoComparison(True, None, float(z[k]),
                                 float(np.minimum(uu, vv)[k]), worst)
    witness = (float(us[k[0]]), float(vs[k[1]]))
    return BertinoComparison(False, witness, float(z[k]),
                             float(min(witness)), worst)
