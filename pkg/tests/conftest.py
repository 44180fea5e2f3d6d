"""Shared random generators for curves, sections and interval families.

All generators take an explicit numpy Generator so every test controls
its own seed; nothing here depends on global random state.
"""

from __future__ import annotations

import numpy as np

from curvcopula import (CurvilinearSection, IntervalFamily, MonotoneCurve,
                        PiecewiseLinearFn, compatibility_check,
                        determined_section, validate_section)


def random_grid(rng: np.random.Generator, segments: int) -> np.ndarray:
    """A strictly increasing grid 0 = x0 < ... < xn = 1 with a floor on
    every gap, so curve constructors never trip the step guards."""
    w = rng.dirichlet(np.ones(segments))
    w = 0.3 / segments + 0.7 * w
    xs = np.concatenate(([0.0], np.cumsum(w)))
    xs[-1] = 1.0
    return xs


def random_curve(rng: np.random.Generator, segments: int | None = None,
                 min_deviation: float = 0.0) -> MonotoneCurve:
    """A random strictly increasing piecewise-linear curve through (0,0)
    and (1,1). With min_deviation > 0, the curve is redrawn until it
    strays at least that far from the identity somewhere."""
    for _ in range(200):
        n = int(segments if segments is not None else rng.integers(3, 9))
        xs = random_grid(rng, n)
        ys = random_grid(rng, n)
        curve = MonotoneCurve.from_points(np.column_stack((xs, ys)))
        if min_deviation <= 0.0:
            return curve
        probe = np.linspace(0.0, 1.0, 513)
        if np.max(np.abs(curve(probe) - probe)) >= min_deviation:
            return curve
    raise AssertionError("could not draw a curve with the requested deviation")


def random_curve_fixing_half(rng: np.random.Generator) -> MonotoneCurve:
    """A random curve constrained to pass exactly through (0.5, 0.5)."""
    left = int(rng.integers(2, 5))
    right = int(rng.integers(2, 5))
    xs = np.concatenate((0.5 * random_grid(rng, left),
                         0.5 + 0.5 * random_grid(rng, right)[1:]))
    ys = np.concatenate((0.5 * random_grid(rng, left),
                         0.5 + 0.5 * random_grid(rng, right)[1:]))
    return MonotoneCurve.from_points(np.column_stack((xs, ys)))


def random_section(rng: np.random.Generator, curve: MonotoneCurve,
                   resolution: int = 257,
                   touch_chance: float = 0.25) -> CurvilinearSection:
    """A random admissible section built by a feasible-window walk.

    At each grid step the next value is drawn inside the window allowed
    by monotonicity, the co-Lipschitz slope cap, and the two envelope
    bounds; with probability touch_chance it snaps to the envelope. The
    window is never empty and the terminal value is forced to 1.
    """
    ts = curve.as_pwl.refined(np.linspace(0.0, 1.0, resolution)).xs
    phi = curve(ts)
    env = curve.envelope(ts)
    lower = np.maximum(0.0, ts + phi - 1.0)
    g = np.empty_like(ts)
    g[0] = 0.0
    for k in range(1, len(ts)):
        cap = g[k - 1] + (ts[k] - ts[k - 1]) + (phi[k] - phi[k - 1])
        lo = max(g[k - 1], lower[k])
        hi = min(cap, env[k])
        if hi < lo:
            hi = lo
        if rng.random() < touch_chance:
            g[k] = hi
        else:
            g[k] = lo + rng.random() * (hi - lo)
    g[-1] = 1.0
    return validate_section(curve, PiecewiseLinearFn(ts, g))


def random_compatible_pairs(rng: np.random.Generator, curve: MonotoneCurve,
                            max_intervals: int = 5) -> list[tuple[float, float]]:
    """Random disjoint (a, b) pairs satisfying the compatibility
    inequality with strict margin; at least one pair."""
    pairs = []
    a = float(rng.uniform(0.05, 0.45))
    b = float(a + (min(a + 0.4, 0.9) - a) * rng.uniform(0.2, 1.0))
    pairs.append((a, b))
    for _ in range(int(rng.integers(0, max_intervals - 1))):
        threshold = max(float(curve(b)), float(curve.inverse(b)))
        if threshold >= 0.93:
            break
        a = threshold + (1.0 - threshold) * float(rng.uniform(0.1, 0.5))
        b = a + (1.0 - a) * float(rng.uniform(0.1, 0.6))
        if b >= 0.98:
            break
        pairs.append((a, b))
    return pairs


def random_compatible_family(rng: np.random.Generator, curve: MonotoneCurve,
                             max_intervals: int = 5):
    """(section, family) for a random compatible determined instance."""
    pairs = random_compatible_pairs(rng, curve, max_intervals)
    section, family = determined_section(curve, pairs)
    assert compatibility_check(curve, family) is None
    return section, family


def make_incompatible(rng: np.random.Generator, curve: MonotoneCurve,
                      min_margin: float = 0.02):
    """A determined section whose family fails compatibility by at least
    min_margin. Draws until a family with enough room exists."""
    for _ in range(500):
        pairs = random_compatible_pairs(rng, curve)
        if len(pairs) < 2:
            continue
        j = int(rng.integers(1, len(pairs)))
        prev_b = pairs[j - 1][1]
        threshold = max(float(curve(prev_b)), float(curve.inverse(prev_b)))
        if threshold - prev_b < 1e-4:
            continue
        new_a = prev_b + float(rng.uniform(0.1, 0.6)) * (threshold - prev_b)
        new_b = max(pairs[j][1], new_a + 0.05)
        if new_b >= 1.0:
            continue
        moved = pairs[:j] + [(new_a, new_b)]
        section, family = determined_section(curve, moved)
        clash = compatibility_check(curve, family)
        if clash is not None and clash.rhs - clash.lhs >= min_margin:
            return section, family, clash
    raise AssertionError("could not construct an incompatible family")


def envelope_mix_section(rng: np.random.Generator, curve: MonotoneCurve,
                         min_gap_depth: float = 0.01) -> CurvilinearSection:
    """A section strictly between a determined section and the envelope.

    The blend stays admissible (the admissible set is convex) and is
    strictly increasing inside every gap, so it never takes the
    determined form there.
    """
    for _ in range(200):
        section, _ = random_compatible_family(rng, curve)
        lam = float(rng.uniform(0.3, 0.7))
        xs = section.values.xs
        mixed = lam * section.values.ys + (1.0 - lam) * curve.envelope(xs)
        cand = validate_section(curve, PiecewiseLinearFn(xs, mixed))
        if float(np.max(cand.envelope_gap.ys)) >= min_gap_depth:
            return cand
    raise AssertionError("could not construct a deep enough blended section")
