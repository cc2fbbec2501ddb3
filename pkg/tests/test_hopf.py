import math

import numpy as np
import pytest

from oracles import random_unitary
from ramcert.arrangement import incidence
from ramcert.catalog import ceva, triangle
from ramcert.errors import DegenerateInput, DuplicateLines, TooFewLines, WrongCount, ZeroDirection
from ramcert.hopf import (
    QUARTER_PI,
    CatStatus,
    ComplexLine2,
    HopfConfig,
    HullStatus,
    base_point,
    cat1_verdict,
    covering_radius,
    fibonacci_sphere,
    grid_covering_radius,
    hull_contains_origin,
    lift,
    line_angle,
    local_configs,
    quotient_distance,
    three_fiber_check,
    three_point_s2_check,
)

TETRA = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]]) / math.sqrt(3)


def random_lines(rng, n):
    d = rng.normal(size=(n, 2)) + 1j * rng.normal(size=(n, 2))
    return [ComplexLine2(a, b) for a, b in d]


def test_base_point_examples():
    assert np.allclose(base_point((1, 0)), [0, 0, 1])
    assert np.allclose(base_point((0, 1)), [0, 0, -1])
    assert np.allclose(base_point((1, 1)), [1, 0, 0])
    with pytest.raises(ZeroDirection):
        base_point((0, 0))


def test_line_angle_examples():
    assert line_angle((1, 0), (0, 1)) == pytest.approx(math.pi / 2)
    assert line_angle((1, 0), (1, 0)) == 0
    assert line_angle((1, 0), (1, 1)) == pytest.approx(math.pi / 4, abs=1e-15)
    # projective: a complex rescaling does not move the line
    assert line_angle((1, 2j), (3j, -6)) < 1e-15


def test_lift_inverts_base_point():
    rng = np.random.default_rng(1)
    for p in fibonacci_sphere(50):
        assert np.allclose(base_point(lift(p)), p, atol=1e-12)
    assert np.allclose(base_point(lift([0, 0, -1])), [0, 0, -1])
    for ln in random_lines(rng, 10):
        assert line_angle(lift(base_point(ln)), ln) < 1e-7


def test_hull_examples():
    assert hull_contains_origin([[0, 0, 1], [0, 0, -1]]) is HullStatus.BOUNDARY
    assert hull_contains_origin(TETRA) is HullStatus.INSIDE
    t = 2 * math.pi / 3
    assert hull_contains_origin([[0, 0, 1], [math.sin(t), 0, math.cos(t)]]) is HullStatus.OUTSIDE
    assert hull_contains_origin([[0, 0, 1]]) is HullStatus.OUTSIDE


def test_covering_radius_examples():
    assert covering_radius([[0, 0, 1]]) == pytest.approx(math.pi / 2)
    assert covering_radius([[0, 0, 1], [0, 0, -1]]) == pytest.approx(math.pi / 4)
    assert covering_radius(TETRA) == pytest.approx(math.acos(1 / 3) / 2, abs=1e-12)
    assert covering_radius(TETRA) == pytest.approx(0.61548, abs=1e-5)


def test_verdict_examples():
    v = cat1_verdict([(1, 0), (0, 1)])
    assert v.status is CatStatus.CAT1_BOUNDARY
    assert v.covering_radius == pytest.approx(QUARTER_PI)
    v = cat1_verdict([(1, 0), (math.cos(math.pi / 3), math.sin(math.pi / 3))])
    assert v.status is CatStatus.NOT_CAT1
    assert v.witness is not None
    assert min(line_angle(v.witness_line, ln) for ln in [(1, 0), (0.5, math.sin(math.pi / 3))]) > QUARTER_PI
    # an antipodal pair plus an equator point puts the origin on an edge of the hull
    v = cat1_verdict([(1, 0), (0, 1), (1, 1)])
    assert v.status is CatStatus.CAT1_BOUNDARY and v.status.is_cat1
    v = cat1_verdict([(1, 0), (0, 1), (1, 1), (1, -1), (1, 1j), (1, -1j)])
    assert v.status is CatStatus.CAT1


def test_verdict_errors():
    with pytest.raises(TooFewLines):
        cat1_verdict([(1, 0)])
    with pytest.raises(DuplicateLines):
        cat1_verdict([(1, 1), (2j, 2j)])
    with pytest.raises(DegenerateInput):
        HopfConfig(np.array([[1.0, 1.0, 0.0]]))


def test_metric_compatibility():
    rng = np.random.default_rng(7)
    lines = random_lines(rng, 200)
    for a, b in zip(lines[::2], lines[1::2]):
        assert abs(quotient_distance(base_point(a), base_point(b)) - line_angle(a, b)) < 1e-9


@pytest.mark.parametrize("seed", range(25))
def test_hull_radius_agree_and_rotation_invariance(seed):
    rng = np.random.default_rng(seed)
    lines = random_lines(rng, 2 + seed % 7)
    v = cat1_verdict(lines)
    if v.status is CatStatus.NOT_CAT1:
        assert v.covering_radius > QUARTER_PI - 1e-6
    else:
        assert v.covering_radius <= QUARTER_PI + 1e-6
    for _ in range(4):
        u = random_unitary(rng)
        moved = [ln.transformed(u) for ln in lines]
        w = cat1_verdict(moved)
        assert w.status is v.status
        assert abs(w.covering_radius - v.covering_radius) < 1e-9
        assert abs(line_angle(moved[0], moved[1]) - line_angle(lines[0], lines[1])) < 1e-9


@pytest.mark.parametrize("seed", range(10))
def test_grid_cross_check(seed):
    rng = np.random.default_rng(100 + seed)
    config = HopfConfig.from_lines(random_lines(rng, 2 + seed % 7))
    exact = covering_radius(config)
    grid, _ = grid_covering_radius(config)
    assert abs(exact - grid) <= 1e-6


def test_conjecture_restatement_by_sampling():
    """Every sampled line h is within pi/4 of the configuration iff radius <= pi/4."""
    rng = np.random.default_rng(3)
    samples = np.array([lift(p).direction for p in fibonacci_sphere(20000)])
    samples /= np.linalg.norm(samples, axis=1)[:, None]
    checked = 0
    while checked < 12:
        lines = random_lines(rng, int(rng.integers(2, 9)))
        radius = covering_radius(HopfConfig.from_lines(lines))
        if abs(radius - QUARTER_PI) < 0.05:
            continue  # too close to call at this grid resolution
        dirs = np.array([ln.direction / np.linalg.norm(ln.direction) for ln in lines])
        inner = np.abs(samples.conj() @ dirs.T)
        worst = np.max(np.min(np.arccos(np.clip(inner, 0, 1)), axis=1))
        assert (worst <= QUARTER_PI) == (radius <= QUARTER_PI)
        assert worst <= radius + 1e-9
        checked += 1


def test_three_point_examples():
    eq = [[math.cos(t), math.sin(t), 0] for t in (0, 2 * math.pi / 3, 4 * math.pi / 3)]
    assert three_point_s2_check(*eq)
    assert not three_point_s2_check([1, 0, 0], [0, 1, 0], [0, 0, 1])
    z = np.array([0.3, 0.4, math.sqrt(1 - 0.25)])
    assert three_point_s2_check([0, 0, 1], [0, 0, -1], z / np.linalg.norm(z))
    with pytest.raises(DegenerateInput):
        three_point_s2_check([1, 0, 0], [1, 0, 0], [0, 1, 0])


def test_three_fiber_examples():
    eq = [[math.cos(t), math.sin(t), 0] for t in (0, 2 * math.pi / 3, 4 * math.pi / 3)]
    assert three_fiber_check(eq)
    clustered = [[0, 0, 1], [math.sin(0.05), 0, math.cos(0.05)], [0, math.sin(0.05), math.cos(0.05)]]
    assert not three_fiber_check(clustered)
    assert three_fiber_check([[0, 0, 1], [0, 0, -1], [0.6, 0, 0.8]])
    with pytest.raises(WrongCount):
        three_fiber_check([[0, 0, 1], [0, 0, -1]])


def test_three_fiber_implies_cat1():
    rng = np.random.default_rng(11)
    for _ in range(30):
        # perimeter-pi triples: antipodal pair plus anything, or a great circle triple
        if rng.random() < 0.5:
            p = rng.normal(size=3)
            p /= np.linalg.norm(p)
            q = rng.normal(size=3)
            q /= np.linalg.norm(q)
            pts = [p, -p, q]
        else:
            u = random_unitary(rng, 3).real
            u, _ = np.linalg.qr(rng.normal(size=(3, 3)))
            t = np.sort(rng.uniform(0, 2 * math.pi, 3))
            while np.max(np.diff(np.concatenate([t, [t[0] + 2 * math.pi]]))) >= math.pi:
                t = np.sort(rng.uniform(0, 2 * math.pi, 3))
            pts = [u @ [math.cos(s), math.sin(s), 0] for s in t]
        assert three_fiber_check(pts)
        assert cat1_verdict([lift(p) for p in pts]).status.is_cat1


def test_local_configs():
    arr = ceva(3)
    inc = incidence(arr)
    locs = local_configs(arr, inc)
    assert len(locs) == len(inc.points)
    for loc in locs:
        assert loc.multiplicity == 3
        assert loc.verdict.status.is_cat1
    tri = local_configs(triangle())
    assert len(tri) == 3
    for loc in tri:
        assert len(loc.lines) == 2
        assert line_angle(*loc.lines) == pytest.approx(math.pi / 2)
        assert loc.verdict.status is CatStatus.CAT1_BOUNDARY
