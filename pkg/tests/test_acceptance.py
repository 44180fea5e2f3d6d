"""Acceptance gate: one test per headline property, at desk scale.

Each test prints a single summary line; with pytest -v every criterion
shows up as its own pass/fail row.
"""

from __future__ import annotations

import time

import numpy as np

from conftest import (envelope_mix_section, make_incompatible,
                      random_compatible_pairs, random_curve,
                      random_curve_fixing_half, random_section)
from curvcopula import (BertinoSurface, Incompatibility, MonotoneCurve,
                        NotDetermined, UpperBoundSurface, WSectionUpperBound,
                        check_bertino_is_M, check_copula, check_quasi,
                        compatibility_check, decide, determined_section,
                        envelope_section, find_worst_rectangle,
                        generate_compatible_family, product_section,
                        w_section)

TOL = 1e-9
GRID = 100     # 101 lattice points per axis
FINE_GRID = 200


def _report(line: str) -> None:
    print(line)


def _mixed_sections(rng, count):
    """An even mix of determined, W-section, product and random PWL
    sections over random curves."""
    sections = []
    for k in range(count):
        curve = random_curve(rng)
        kind = k % 4
        if kind == 0:
            section, _ = determined_section(
                curve, random_compatible_pairs(rng, curve))
        elif kind == 1:
            section = w_section(curve)
        elif kind == 2:
            section = product_section(curve)
        else:
            section = random_section(rng, curve)
        sections.append(section)
    return sections


def _surface_pool(seed: int):
    """Both extremal surfaces for five curves times five section kinds."""
    rng = np.random.default_rng(seed)
    pool = []
    for _ in range(5):
        curve = random_curve(rng)
        sections = [
            envelope_section(curve),
            w_section(curve),
            product_section(curve),
            random_section(rng, curve),
            determined_section(curve, random_compatible_pairs(rng, curve))[0],
        ]
        for section in sections:
            pool.append(UpperBoundSurface(section))
            pool.append(BertinoSurface(section))
    return pool


def test_criterion_1_envelope_section_upper_bound_is_M():
    rng = np.random.default_rng(1001)
    us = np.linspace(0.0, 1.0, GRID + 1)
    uu, vv = np.meshgrid(us, us, indexing="ij")
    m_vals = np.minimum(uu, vv)
    slowest = 0.0
    for _ in range(20):
        curve = random_curve(rng)
        start = time.perf_counter()
        surface = UpperBoundSurface(envelope_section(curve))
        deviation = np.max(np.abs(surface.eval(uu, vv) - m_vals))
        elapsed = time.perf_counter() - start
        slowest = max(slowest, elapsed)
        assert deviation == 0.0
        assert elapsed < 1.0
    _report(f"criterion 1: PASS - A of m_phi equals M exactly on the "
            f"{GRID + 1}-point grid for 20 curves (slowest {slowest:.3f} s)")


def test_criterion_2_bertino_is_always_a_copula():
    rng = np.random.default_rng(1002)
    worst = 0.0
    for section in _mixed_sections(rng, 100):
        report = check_copula(BertinoSurface(section), grid_n=GRID, tol=TOL)
        assert report.passed, report.to_dict()
        worst = min(worst, report.min_volume)
    _report(f"criterion 2: PASS - 100 Bertino surfaces certified 2-increasing "
            f"(lowest rectangle mass {worst:.3g})")


def test_criterion_3_bertino_equals_M_only_for_identity():
    identity = check_bertino_is_M(MonotoneCurve.identity(), grid_n=GRID)
    assert identity.equal
    assert identity.max_deviation == 0.0
    rng = np.random.default_rng(1003)
    smallest = np.inf
    for _ in range(20):
        curve = random_curve(rng, min_deviation=0.05)
        report = check_bertino_is_M(curve, grid_n=GRID)
        assert not report.equal
        assert report.witness is not None
        assert report.max_deviation >= 1e-4
        smallest = min(smallest, report.max_deviation)
    _report(f"criterion 3: PASS - identity curve matches M exactly; 20 "
            f"non-identity curves each witness M - B >= 1e-4 "
            f"(smallest {smallest:.3g})")


def test_criterion_4_compatible_families_give_copulas():
    rng = np.random.default_rng(1004)
    start = time.perf_counter()
    for _ in range(50):
        curve = random_curve(rng)
        pairs = random_compatible_pairs(rng, curve)
        section, _ = determined_section(curve, pairs)
        verdict = decide(section)
        assert verdict.is_copula, verdict.to_dict()
        report = check_copula(UpperBoundSurface(section), grid_n=FINE_GRID,
                              tol=TOL)
        assert report.passed, report.to_dict()
    elapsed = time.perf_counter() - start
    assert elapsed < 60.0
    _report(f"criterion 4: PASS - 50 compatible families decided Copula and "
            f"swept clean at grid {FINE_GRID + 1} in {elapsed:.1f} s")


def _confirmed_negative(surface) -> float:
    report = find_worst_rectangle(surface, grid_n=GRID)
    if report.volume >= -1e-6:
        report = find_worst_rectangle(surface, grid_n=1000)
    return report.volume


def test_criterion_5_violations_are_rejected_with_witnesses():
    rng = np.random.default_rng(1005)
    identity = MonotoneCurve.identity()

    pi_section = product_section(identity)
    verdict = decide(pi_section)
    assert not verdict.is_copula
    assert isinstance(verdict.reason, NotDetermined)
    pi_worst = find_worst_rectangle(UpperBoundSurface(pi_section),
                                    grid_n=GRID).volume
    assert pi_worst <= -0.17

    shape_sections = [pi_section]
    for _ in range(24):
        shape_sections.append(product_section(random_curve(rng)))
    for _ in range(25):
        curve = random_curve(rng, min_deviation=0.02)
        shape_sections.append(envelope_mix_section(rng, curve))
    for section in shape_sections:
        verdict = decide(section)
        assert not verdict.is_copula
        assert isinstance(verdict.reason, NotDetermined)
        assert _confirmed_negative(UpperBoundSurface(section)) < -1e-6

    clash_count = 0
    while clash_count < 25:
        curve = random_curve(rng, min_deviation=0.05)
        made = make_incompatible(rng, curve)
        if made is None:
            continue
        section, _, _ = made
        verdict = decide(section)
        assert not verdict.is_copula
        assert isinstance(verdict.reason, Incompatibility)
        assert _confirmed_negative(UpperBoundSurface(section)) < -1e-6
        clash_count += 1
    _report(f"criterion 5: PASS - 50 shape violations and 25 compatibility "
            f"violations all rejected with negative rectangles "
            f"(independence-section worst {pi_worst:.4f})")


def test_criterion_6_w_section_closed_form_matches():
    rng = np.random.default_rng(1006)
    us = np.linspace(0.0, 1.0, FINE_GRID + 1)
    uu, vv = np.meshgrid(us, us, indexing="ij")
    worst = 0.0
    for _ in range(10):
        curve = random_curve(rng)
        closed = WSectionUpperBound(curve).eval(uu, vv)
        generic = UpperBoundSurface(w_section(curve)).eval(uu, vv)
        worst = max(worst, float(np.max(np.abs(closed - generic))))
    assert worst <= TOL

    pinned = random_curve_fixing_half(rng)
    closed = WSectionUpperBound(pinned).eval(uu, vv)
    diagonal = UpperBoundSurface(
        w_section(MonotoneCurve.identity())).eval(uu, vv)
    pinned_dev = float(np.max(np.abs(closed - diagonal)))
    assert pinned_dev <= TOL
    _report(f"criterion 6: PASS - closed form matches the generic bound "
            f"(max dev {worst:.2g}); curve through (1/2, 1/2) reproduces the "
            f"diagonal case (dev {pinned_dev:.2g})")


def test_criterion_7_generated_families_are_compatible():
    rng = np.random.default_rng(1007)
    for _ in range(20):
        curve = random_curve(rng)
        a1 = float(rng.uniform(0.05, 0.4))
        b1 = float(rng.uniform(a1 + 0.05, 0.6))
        family = generate_compatible_family(curve, a1, b1, 10)
        pairs = family.pairs()
        assert len(pairs) == 10
        for (_, b_prev), (a_next, _) in zip(pairs, pairs[1:]):
            assert a_next >= b_prev - 1e-12
        assert compatibility_check(curve, family, tol=TOL) is None
        section, _ = determined_section(curve, pairs)
        verdict = decide(section)
        assert verdict.is_copula, verdict.to_dict()
    _report("criterion 7: PASS - 20 generated ten-interval families are "
            "disjoint, compatible and decided Copula")


def test_criterion_8_extremal_surfaces_are_quasi_copulas():
    pool = _surface_pool(1008)
    for surface in pool:
        report = check_quasi(surface, grid_n=FINE_GRID, tol=TOL)
        assert report.passed, (surface.kind, report.to_dict())
    _report(f"criterion 8: PASS - all {len(pool)} extremal surfaces pass the "
            f"boundary, monotonicity and Lipschitz checks at grid "
            f"{FINE_GRID + 1}")


def test_criterion_9_surfaces_reproduce_their_sections():
    pool = _surface_pool(1009)
    ts = np.linspace(0.0, 1.0, 200)
    worst = 0.0
    for surface in pool:
        section = surface.section
        curve = section.curve
        trace = surface.eval(ts, curve(ts))
        worst = max(worst, float(np.max(np.abs(trace - section(ts)))))
    assert worst <= TOL
    _report(f"criterion 9: PASS - every bound surface reproduces its section "
            f"along the curve (max dev {worst:.2g} over 200 points)")
