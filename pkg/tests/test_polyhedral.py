"""Cones, fans, stellar subdivision, arrangement sweeps."""

import random

import pytest

from gitfankit.polyhedral import (
    Cone,
    FanAxiomViolation,
    arrangement_leaves,
    dual_description,
    fan_from_maximal,
    is_subfan,
    iterated_stellar,
    refinement_preserves_support,
    stellar_subdivide,
)


def cone(*gens, dim=None):
    dim = dim if dim is not None else len(gens[0])
    return Cone.from_generators(list(gens), dim)


def orthant_fan(d):
    eye = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    return fan_from_maximal([Cone.from_generators(eye, d)])


# -- dual descriptions -------------------------------------------------------


def test_dual_description_orthant2():
    facets, span = dual_description([(1, 0), (0, 1)], 2)
    assert facets == ((0, 1), (1, 0))
    assert span == ()


def test_dual_description_halfplane():
    c = cone((1, 0), (-1, 0), (0, 1))
    assert c.facets == ((0, 1),)
    assert c.span_eqs == ()
    assert c.lineality == ((1, 0),)


def test_simplicial_facets_against_inverse_oracle():
    """For a full-dimensional simplicial cone the facet normals are the rows
    of the inverse of the generator matrix, up to positive scaling: an
    independent check of the conversion engine."""
    from gitfankit.exact_linalg import QMatrix, QVector, primitive_vector, rank, solve

    rng = random.Random(23)
    produced = 0
    while produced < 40:
        dim = rng.randint(2, 5)
        gens = [tuple(rng.randint(-4, 4) for _ in range(dim)) for _ in range(dim)]
        mat_t = QMatrix.from_rows(gens)  # generators as rows = M transposed
        if rank(mat_t) != dim:
            continue
        inv_rows = []
        for i in range(dim):
            e = QVector([1 if j == i else 0 for j in range(dim)])
            y = solve(mat_t, e)
            assert y is not None
            inv_rows.append(primitive_vector(y.entries))
        c = Cone.from_generators(gens, dim)
        produced += 1
        assert set(c.facets) == set(inv_rows)


def test_roundtrip_random_cones():
    rng = random.Random(11)
    for _ in range(120):
        dim = rng.randint(2, 6)
        gens = [
            tuple(rng.randint(-4, 4) for _ in range(dim))
            for _ in range(rng.randint(1, 12))
        ]
        c = Cone.from_generators(gens, dim)
        assert c == Cone.from_generators(c.generators(), dim)
        assert all(c.contains(g) for g in gens)


# -- membership ---------------------------------------------------------------


def test_contains_modes():
    c = cone((1, 0), (0, 1))
    assert c.contains((1, 1), "relative_interior")
    assert not c.contains((1, 0), "relative_interior")
    assert c.contains((1, 0))


def test_contains_relint_full_orthant():
    c = cone((1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert c.contains((1, 2, 3), "relative_interior")


# -- intersection -------------------------------------------------------------


def test_intersect_common_ray():
    c = cone((1, 0, 0), (0, 1, 0)).intersect(cone((0, 1, 0), (0, 0, 1)))
    assert c.rays == ((0, 1, 0),)


def test_intersect_corner_chamber():
    omega = Cone.from_inequalities(
        [(1, 0, 0), (0, 1, 0), (0, 0, 1)], ambient=3
    )
    half = Cone.from_inequalities([(1, -1, -1)], ambient=3)
    c = omega.intersect(half)
    assert c.rays == ((1, 0, 0), (1, 0, 1), (1, 1, 0))


def test_intersect_idempotent():
    c = cone((1, 2, 0), (0, 1, 1))
    assert c.intersect(c) == c


# -- faces --------------------------------------------------------------------


def test_faces_of_two_cone():
    assert len(cone((1, 0), (0, 1)).faces()) == 4


def test_faces_of_ray():
    assert len(cone((1, 0)).faces()) == 2


@pytest.mark.parametrize("d", [2, 3, 4])
def test_faces_simplicial_count(d):
    eye = [tuple(1 if i == j else 0 for j in range(d)) for i in range(d)]
    assert len(Cone.from_generators(eye, d).faces()) == 2**d


def test_faces_closed_under_intersection():
    c = cone((1, 0, 0), (1, 1, 0), (0, 1, 1), (0, 0, 1))
    faces = c.faces()
    keys = {f._key() for f in faces}
    for f1 in faces:
        for f2 in faces:
            assert f1.intersect(f2)._key() in keys


# -- fan assembly -------------------------------------------------------------


def test_fan_single_cone():
    f = fan_from_maximal([cone((1, 0), (0, 1))])
    assert len(f.maximal) == 1


def test_fan_shared_ray():
    f = fan_from_maximal(
        [cone((1, 0, 0), (0, 1, 0)), cone((0, 1, 0), (0, 0, 1))]
    )
    assert len(f.maximal) == 2


def test_fan_overlap_rejected():
    with pytest.raises(FanAxiomViolation) as exc:
        fan_from_maximal([cone((1, 0), (1, 1)), cone((0, 1), (2, 1))])
    assert len(exc.value.offending) == 2


def test_fan_prunes_faces():
    big = cone((1, 0), (0, 1))
    f = fan_from_maximal([big, cone((1, 0))])
    assert f.maximal == (big,)


# -- stellar subdivision ------------------------------------------------------


def test_stellar_first_ray():
    f = stellar_subdivide(orthant_fan(3), (1, 1, 0))
    got = sorted(c.rays for c in f.maximal)
    assert got == [
        ((0, 0, 1), (0, 1, 0), (1, 1, 0)),
        ((0, 0, 1), (1, 0, 0), (1, 1, 0)),
    ]


def test_stellar_second_ray():
    f = iterated_stellar(orthant_fan(3), [(1, 1, 0), (0, 1, 1)])
    got = sorted(c.rays for c in f.maximal)
    assert got == [
        ((0, 0, 1), (0, 1, 1), (1, 1, 0)),
        ((0, 0, 1), (1, 0, 0), (1, 1, 0)),
        ((0, 1, 0), (0, 1, 1), (1, 1, 0)),
    ]


def test_stellar_existing_ray_unchanged():
    f = iterated_stellar(orthant_fan(3), [(1, 1, 0), (0, 1, 1)])
    assert stellar_subdivide(f, (1, 1, 0)) == f
    assert stellar_subdivide(f, (1, 0, 0)) == f


def test_stellar_interior_count():
    # interior ray of a simplicial d-cone: d maximal cones replace one
    for d in (2, 3, 4):
        f = stellar_subdivide(orthant_fan(d), tuple([1] * d))
        assert len(f.maximal) == d


def test_stellar_preserves_support():
    f0 = orthant_fan(3)
    f1 = iterated_stellar(f0, [(1, 1, 0), (0, 1, 1), (1, 2, 1)])
    assert refinement_preserves_support(f0, f1)


def test_stellar_outside_support():
    with pytest.raises(ValueError):
        stellar_subdivide(orthant_fan(2), (-1, 0))


def test_iterated_order_matters():
    f12 = iterated_stellar(orthant_fan(3), [(1, 1, 0), (0, 1, 1)])
    f21 = iterated_stellar(orthant_fan(3), [(0, 1, 1), (1, 1, 0)])
    assert f12 != f21


def test_iterated_nu0_first_order_independent():
    a = iterated_stellar(orthant_fan(3), [(1, 1, 1), (1, 1, 0), (0, 1, 1)])
    b = iterated_stellar(orthant_fan(3), [(1, 1, 1), (0, 1, 1), (1, 1, 0)])
    assert a == b


def test_iterated_empty():
    f = orthant_fan(3)
    assert iterated_stellar(f, []) == f


# -- subfans ------------------------------------------------------------------


def test_subfan_reflexive():
    f = iterated_stellar(orthant_fan(3), [(1, 1, 0)])
    assert is_subfan(f, f)


def test_subfan_single_cone():
    f1 = fan_from_maximal([cone((1, 0, 0), (0, 1, 0))])
    f2 = fan_from_maximal(
        [cone((1, 0, 0), (0, 1, 0)), cone((0, 1, 0), (0, 0, 1))]
    )
    assert is_subfan(f1, f2)
    assert not is_subfan(f2, f1)


def test_subfan_example_fans_incomparable():
    f12 = iterated_stellar(orthant_fan(3), [(1, 1, 0), (0, 1, 1)])
    f21 = iterated_stellar(orthant_fan(3), [(0, 1, 1), (1, 1, 0)])
    assert not is_subfan(f12, f21)
    assert not is_subfan(f21, f12)


def test_subfan_transitive_on_refinements():
    f0 = orthant_fan(3)
    f1 = stellar_subdivide(f0, (1, 1, 1))
    f2 = stellar_subdivide(f1, (1, 1, 0))
    sub = fan_from_maximal([f2.maximal[0]])
    assert is_subfan(sub, f2)


# -- carriers and arrangement sweeps -----------------------------------------


def test_carrier():
    f = iterated_stellar(orthant_fan(3), [(1, 1, 0)])
    c = f.carrier((2, 2, 0))
    assert c.rays == ((1, 1, 0),)
    c = f.carrier((1, 2, 0))
    assert c.rays == ((0, 1, 0), (1, 1, 0))


def test_arrangement_regions_quadrants():
    eye = [(1, 0), (0, 1)]
    leaves = arrangement_leaves(2, [], [(1, -1)], base_eqs=[])
    assert len(leaves) == 2
    leaves = arrangement_leaves(2, eye, [(1, -1)])
    assert len(leaves) == 2


def test_arrangement_faces_count():
    # one line through the plane: 2 regions, the line itself realised as a face
    leaves = arrangement_leaves(2, [], [(1, -1)], with_boundaries=True)
    signs = sorted(l.signs for l in leaves)
    assert signs == [(-1,), (0,), (1,)]


def test_arrangement_faces_braid_count():
    # x=y, x=z, y=z in 3-space: 6 chambers, 6 walls, 1 common line; the
    # all-zero class is the line x=y=z and the mixed zero patterns are empty
    walls = [(1, -1, 0), (1, 0, -1), (0, 1, -1)]
    leaves = arrangement_leaves(3, [], walls, with_boundaries=True)
    by_zeros = {}
    for l in leaves:
        by_zeros.setdefault(l.signs.count(0), []).append(l.signs)
    assert len(by_zeros.get(0, [])) == 6
    assert len(by_zeros.get(1, [])) == 6
    assert by_zeros.get(2) is None  # two of the three coincidences force all
    assert by_zeros.get(3) == [(0, 0, 0)]
    full = [l for l in leaves if l.signs == (0, 0, 0)]
    assert full[0].lineality and not full[0].rays
