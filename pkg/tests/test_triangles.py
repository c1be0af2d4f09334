import pytest
from hypothesis import given, strategies as st

from trilat.lattice import LatticePoint, PeriodicStripe, TriangleRegion, norm, symmetries
from trilat.triangles import (
    EquilateralTriangle,
    apex_candidates,
    classify_pairs,
    count_upright,
    enumerate_triangles,
)

coords = st.integers(min_value=-50, max_value=50)
points = st.builds(LatticePoint, coords, coords)


def test_apex_examples():
    assert apex_candidates(LatticePoint(0, 0), LatticePoint(1, 0)) == ((0, 1), (1, -1))
    assert apex_candidates(LatticePoint(1, 1), LatticePoint(2, 1)) == ((1, 2), (2, 0))
    assert apex_candidates(LatticePoint(0, 0), LatticePoint(3, 0)) == ((0, 3), (3, -3))


def test_apex_degenerate():
    with pytest.raises(ValueError, match="degenerate"):
        apex_candidates(LatticePoint(1, 2), LatticePoint(1, 2))


@given(points, points)
def test_apex_properties(p, q):
    if p == q:
        return
    u, v = apex_candidates(p, q)
    assert u != v
    side = norm(q - p)
    for apex in (u, v):
        assert norm(apex - p) == side
        assert norm(apex - q) == side
    # the two candidates are mirror images across the pair, so their midpoints
    # along the pair axis agree: u + v = p + q
    assert u + v == p + q


def test_enumerate_t2():
    tris = enumerate_triangles(TriangleRegion(2))
    assert len(tris) == 1
    assert tris[0].vertices() == ((0, 0), (1, 0), (0, 1))


@pytest.mark.parametrize("n,count", [(1, 0), (3, 5), (4, 15), (9, 330)])
def test_enumerate_counts(n, count):
    assert len(enumerate_triangles(TriangleRegion(n))) == count


def test_enumerate_rejects_periodic():
    with pytest.raises(ValueError):
        enumerate_triangles(PeriodicStripe(3, 4))


def test_triangles_are_valid_and_canonical():
    for t in enumerate_triangles(TriangleRegion(6)):
        assert t.is_valid()
        assert (t.p1.b, t.p1.a) <= (t.p2.b, t.p2.a) <= (t.p3.b, t.p3.a)


def test_third_vertex_is_an_apex_candidate():
    for t in enumerate_triangles(TriangleRegion(6)):
        p1, p2, p3 = t.vertices()
        assert p3 in apex_candidates(p1, p2)
        assert p2 in apex_candidates(p1, p3)
        assert p1 in apex_candidates(p2, p3)


@pytest.mark.parametrize("n,count", [(2, 1), (4, 10), (5, 20)])
def test_count_upright(n, count):
    assert count_upright(TriangleRegion(n)) == count


@pytest.mark.parametrize("n", range(2, 11))
def test_triangle_set_symmetry_invariant(n):
    tris = set(enumerate_triangles(TriangleRegion(n)))
    for f in symmetries(n):
        mapped = {EquilateralTriangle.of(f(t.p1), f(t.p2), f(t.p3)) for t in tris}
        assert mapped == tris


def test_classify_t4_values():
    cls = classify_pairs(TriangleRegion(4))
    assert cls.tallies() == (9, 27, 9)
    assert sum(cls.tallies()) == 45


def test_classify_t1_empty():
    cls = classify_pairs(TriangleRegion(1))
    assert cls.tallies() == (0, 0, 0)
    assert not cls.counts


def test_classify_t5():
    assert classify_pairs(TriangleRegion(5)).tallies() == (24, 57, 24)


@pytest.mark.parametrize("n", range(1, 9))
def test_pair_triangle_double_count(n):
    # each triangle is counted by exactly 3 of its pairs
    cls = classify_pairs(TriangleRegion(n))
    tris = enumerate_triangles(TriangleRegion(n))
    assert cls.a1 + 2 * cls.a2 == 3 * len(tris)
