import random

import pytest

from patcoh.catalog import build
from patcoh.field import dot, quadratic
from patcoh.linalg import IntLattice, rref
from patcoh.model import Hyperplane, ProjectionData, canonical_hyperplane
from patcoh.orbits import Engine, InfiniteArrangement, ResourceCapExceeded

F5 = quadratic(5)
TAU = F5.elem("1/2", "1/2")
ONE, ZERO = F5.one, F5.zero


def field_inverse(rows):
    """Inverse of a square invertible FElem matrix, via augmented rref."""
    m = len(rows)
    ident = [[ONE if i == j else ZERO for j in range(m)] for i in range(m)]
    aug = [list(rows[i]) + ident[i] for i in range(m)]
    red = rref(aug)
    assert len(red) == m
    return [tuple(red[i][m:]) for i in range(m)]


def test_intersect_affine_example():
    data = build("danzer").data
    eng = Engine(data)
    # full 3-space cut by {v3 = 0}: the coordinate plane spanned by e1, e2
    direction = ((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE))
    point = (ZERO, ZERO, ZERO)
    h = Hyperplane((ZERO, ZERO, ONE), ZERO)
    sub_dir, sub_point, (a, w) = eng.intersect_affine(direction, point, h)
    assert sub_dir == ((ONE, ZERO, ZERO), (ZERO, ONE, ZERO))
    assert sub_point == point
    assert a == ONE and w == (ZERO, ZERO, ONE)


def test_intersect_affine_offset_moves_point():
    data = build("danzer").data
    eng = Engine(data)
    direction = ((ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE))
    point = (ZERO, ZERO, ZERO)
    h = Hyperplane((ZERO, ZERO, ONE), TAU)
    _, sub_point, _ = eng.intersect_affine(direction, point, h)
    assert sub_point == (ZERO, ZERO, TAU)


def test_intersect_affine_rejects_containment():
    data = build("danzer").data
    eng = Engine(data)
    direction = ((ONE, ZERO, ZERO),)
    with pytest.raises(ValueError):
        eng.intersect_affine(direction, (ZERO, ZERO, ZERO),
                             Hyperplane((ZERO, ZERO, ONE), ZERO))


def test_proper():
    assert Engine.proper(((ONE, ZERO),), (ONE, ZERO))
    assert not Engine.proper(((ZERO, ONE),), (ONE, ZERO))


def test_same_orbit_fibonacci_points():
    data = build("fibonacci").data
    eng = Engine(data)
    direction = ()  # points in a 1-dim internal space
    full = IntLattice.full(2)
    # 0 and 1 + tau are lattice translates; 0 and 1/3 are not
    assert eng.same_orbit((direction, (ZERO,)), (direction, (ONE + TAU,)), full)
    assert not eng.same_orbit((direction, (ZERO,)), (direction, (F5.elem("1/3"),)), full)
    assert eng.same_orbit((direction, (TAU,)), (direction, (TAU,)), full)


def test_hyperplane_class_counts():
    assert len(Engine(build("ammann_kramer").data).hyperplane_classes()) == 15
    assert len(Engine(build("danzer").data).hyperplane_classes()) == 6


def test_fibonacci_arrangement():
    arr = Engine(build("fibonacci").data).enumerate_arrangement()
    assert arr.counts() == [1]
    cls = arr.levels[0][0]
    assert cls.dim == 0 and cls.stabilizer.rank == 0


def test_danzer_counts_and_level_law():
    eng = Engine(build("danzer").data)
    arr = eng.enumerate_arrangement()
    assert arr.counts() == [1, 15, 6]
    for level, classes in arr.levels.items():
        for cls in classes:
            assert cls.dim == level
            assert len(cls.direction) == level
            # direction rows are a canonical rref basis
            assert tuple(tuple(r) for r in rref(cls.direction)) == cls.direction


def test_danzer_translate_closure():
    eng = Engine(build("danzer").data)
    arr = eng.enumerate_arrangement()
    rng = random.Random(67)
    full = IntLattice.full(eng.n)
    for classes in arr.levels.values():
        for cls in classes:
            y = [rng.randint(-3, 3) for _ in range(eng.n)]
            shift = eng.gamma_vec(y)
            moved = tuple(p + s for p, s in zip(cls.point, shift))
            assert eng.same_orbit((cls.direction, cls.point),
                                  (cls.direction, moved), full)


def test_danzer_stabilizer_rank_law():
    eng = Engine(build("danzer").data)
    arr = eng.enumerate_arrangement()
    nu = eng.n // eng.m
    for level, classes in arr.levels.items():
        for cls in classes:
            assert cls.stabilizer.rank == nu * level


def test_duplicate_translated_plane_changes_nothing():
    data = build("danzer").data
    eng = Engine(data)
    base = eng.enumerate_arrangement().counts()
    h = data.planes[0]
    shift = dot(h.normal, eng.gamma_vec([1, -2, 0, 3, 0, 1]))
    extra = canonical_hyperplane(Hyperplane(h.normal, h.offset + shift))
    data2 = ProjectionData(data.field, data.m, data.gens,
                           data.planes + (extra,), data.name)
    assert Engine(data2).enumerate_arrangement().counts() == base


def test_gl_equivariance_danzer():
    data = build("danzer").data
    t = [(ONE, TAU, ZERO), (ZERO, ONE, ONE), (TAU, ZERO, ONE)]
    tinv = field_inverse(t)
    gens2 = tuple(tuple(dot(row, g) for row in t) for g in data.gens)
    planes2 = tuple(
        canonical_hyperplane(Hyperplane(
            tuple(dot(h.normal, tuple(r[j] for r in tinv)) for j in range(3)),
            h.offset))
        for h in data.planes)
    data2 = ProjectionData(data.field, data.m, gens2, planes2, data.name)
    arr1 = Engine(data).enumerate_arrangement()
    arr2 = Engine(data2).enumerate_arrangement()
    assert arr1.counts() == arr2.counts()
    for level in arr1.levels:
        stabs1 = sorted(c.stabilizer.basis for c in arr1.levels[level])
        stabs2 = sorted(c.stabilizer.basis for c in arr2.levels[level])
        assert stabs1 == stabs2


def test_infinite_demo_raises_with_witness():
    eng = Engine(build("infinite_demo").data)
    with pytest.raises(InfiniteArrangement) as exc:
        eng.enumerate_arrangement()
    err = exc.value
    assert err.witness_level == 0
    assert err.deficient_subgroup_rank < err.full_rank == 3


def test_resource_cap():
    eng = Engine(build("danzer").data, max_classes=3)
    with pytest.raises(ResourceCapExceeded):
        eng.enumerate_arrangement()


def test_relative_levels_empty_without_proper_cuts():
    # a line inside every translated plane of the family contributes nothing
    data = build("square_fibonacci").data
    eng = Engine(data)
    hcs = eng.hyperplane_classes()
    vertical = [hc for hc in hcs if hc.normal == (ONE, ZERO)]
    direction = ((ZERO, ONE),)
    stab = eng.stabilizer(direction)
    out = eng.relative_levels(direction, (ZERO, ZERO), stab, vertical)
    assert out == {0: []}


def test_relative_levels_of_danzer_plane():
    eng = Engine(build("danzer").data)
    arr = eng.enumerate_arrangement()
    plane = arr.levels[2][0]
    rel = eng.relative_levels(plane.direction, plane.point, plane.stabilizer,
                              arr.levels[2])
    assert set(rel) == {1, 0}
    for level, classes in rel.items():
        for cls in classes:
            assert cls.dim == level
