"""GIT fans, ambient fans, nu rays, GKZ cones, Delta-reduction, centers."""

import itertools
import random

import pytest

import gitfankit.gitfan as gf
import gitfankit.grassmann as gr
from gitfankit.exact_linalg import QMatrix, kernel_basis, primitive_vector
from gitfankit.grassmann import GuardExceeded, TwoBlock, YSet
from gitfankit.polyhedral import Cone, is_subfan


def test_omega_star_inside_omega():
    for n in (3, 4, 5, 6):
        assert gf.omega(n).contains_cone(gf.omega_star(n))


def test_omega_star_n3():
    assert gf.omega_star(3).rays == ((0, 1, 1), (1, 0, 1), (1, 1, 0))
    assert gf.omega_star(3).contains((1, 1, 1), "relative_interior")


def test_chamber_inner_triangle():
    ch = gf.chamber((1, 1, 1), 3)
    assert ch.cone == gf.omega_star(3)
    assert all(gr.is_y_set(YSet(3, m)) for m in ch.defining_ysets)


def test_chamber_corner():
    ch = gf.chamber((3, 1, 1), 3)
    assert ch.cone.rays == ((1, 0, 0), (1, 0, 1), (1, 1, 0))


def test_chamber_contains_its_weight():
    rng = random.Random(2)
    for _ in range(15):
        w = tuple(rng.randint(0, 6) for _ in range(4))
        ch = gf.chamber(w, 4)
        assert ch.cone.contains(w)


def test_chamber_outside_support():
    with pytest.raises(ValueError):
        gf.chamber((-1, 0, 0), 3)


def test_chamber_cone_recomputed_from_defining_sets():
    wd = gr.weights(3)
    ch = gf.chamber((3, 1, 1), 3)
    acc = None
    for members in ch.defining_ysets:
        c = Cone.from_generators([wd.w[p] for p in members], 3)
        acc = c if acc is None else acc.intersect(c)
    assert acc == ch.cone


@pytest.mark.parametrize("n,chambers", [(3, 4), (4, 12)])
def test_git_fan_counts(n, chambers):
    fan = gf.git_fan(n)
    assert len(fan.maximal) == chambers
    assert fan == gf.wall_fan(n)


def test_git_fan_n4_inside_star():
    fan = gf.git_fan(4)
    star = gf.omega_star(4)
    assert sum(1 for c in fan.maximal if star.contains_cone(c)) == 8


def test_git_fan_guard():
    with pytest.raises(GuardExceeded):
        gf.git_fan(6)


@pytest.mark.parametrize("n", [3, 4])
def test_star_subfan(n):
    assert is_subfan(gf.git_fan_star(n), gf.git_fan(n))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_chambers_outside_star_are_corner_cones(n):
    """The complement of the inner support is covered by exactly n corner
    chambers, one per index, spanned by the weights containing that index."""
    fan = gf.git_fan(n)
    star = gf.omega_star(n)
    outside = [c for c in fan.maximal if not star.contains_cone(c)]
    wd = gr.weights(n)
    corners = []
    for i in range(1, n + 1):
        gens = [wd.w[p] for p in gr.pairs(n)[0] if i in p]
        corners.append(Cone.from_generators(gens, n))
    assert sorted(c.rays for c in outside) == sorted(c.rays for c in corners)


def test_lambda_chambers_n3():
    l0, l1 = gf.lambda0(3), gf.lambda1(3)
    assert l1.cone == gf.omega_star(3)
    common = l0.cone.intersect(l1.cone)
    assert common.dim == 2
    f1 = (1, -1, -1)
    assert all(sum(a * b for a, b in zip(f1, r)) == 0 for r in common.rays)
    star = gf.omega_star(3)
    assert star.contains_cone(l1.cone)
    assert not star.contains_cone(l0.cone)


@pytest.mark.parametrize("n", [3, 4])
def test_lambda_chambers_in_git_fan(n):
    fan = gf.git_fan(n)
    assert fan.has_cone(gf.lambda0(n).cone)
    assert fan.has_cone(gf.lambda1(n).cone)


def test_envelope_sets_n3():
    lam0 = gf.lambda0(3)
    envs = gf.envelope_sets(lam0, 3)
    all_pairs = frozenset(gr.pairs(3)[0])
    # the full index set always qualifies (complement gives the zero cone)
    assert all_pairs in set(envs.sets)
    # the complement of the A={2,3} carrier set qualifies
    carrier_pairs = frozenset({(0, 2), (0, 3), (2, 3)})
    assert frozenset(all_pairs - carrier_pairs) in set(envs.sets)
    # every enveloping set contains a Y-set witness covering the chamber
    wd = gr.weights(3)
    rep = lam0.cone.relint_point()
    for i in set(envs.sets):
        found = False
        for members in envs.sets:
            if members <= i and gr.is_y_set(YSet(3, members)):
                c = Cone.from_generators([wd.w[p] for p in members], 3)
                if c.contains(rep, "relative_interior") and all(
                    c.contains(g) for g in lam0.cone.generators()
                ):
                    found = True
                    break
        assert found


def test_envelope_sets_match_literal_definition():
    """The witness-closure computation must agree with the definition taken
    literally: I qualifies iff some Y-set J inside it has relint(lam) inside
    relint(omega_J) inside relint(omega_I), each inclusion checked directly."""
    n = 3
    wd = gr.weights(n)
    all_pairs = gr.pairs(n)[0]

    def omega_cone(members):
        return Cone.from_generators([wd.w[p] for p in members], n)

    def relint_inside(inner: Cone, outer: Cone) -> bool:
        return all(outer.contains(g) for g in inner.generators()) and outer.contains(
            inner.relint_point(), "relative_interior"
        )

    ysets = [frozenset(y.members) for y in gr.enumerate_y_sets(n)]
    for lam in (gf.lambda0(n), gf.lambda1(n)):
        computed = set(gf.envelope_sets(lam, n).sets)
        literal = set()
        for mask in range(1 << len(all_pairs)):
            members = frozenset(p for k, p in enumerate(all_pairs) if mask >> k & 1)
            omega_i = omega_cone(members)
            for j in ysets:
                if j <= members and relint_inside(lam.cone, omega_cone(j)):
                    if relint_inside(omega_cone(j), omega_i):
                        literal.add(members)
                        break
        assert computed == literal


def test_sigma0_contains_carrier():
    wd = gr.weights(3)
    s0 = gf.sigma_fan_cached(3, 0)
    carrier = Cone.from_generators(
        [wd.v[(0, 2)], wd.v[(0, 3)], wd.v[(2, 3)]], 3
    )
    assert s0.has_cone(carrier)
    assert primitive_vector(wd.v[(0, 1)]) not in set(s0.rays)


def test_sigma0_contains_all_block_carriers():
    for n in (3, 4):
        wd = gr.weights(n)
        s0 = gf.sigma_fan_cached(n, 0)
        all_pairs = gr.pairs(n)[0]
        for size in range(2, n):
            for a in itertools.combinations(range(2, n + 1), size):
                block = set(a) | {0}
                carrier = Cone.from_generators(
                    [wd.v[p] for p in all_pairs if set(p) <= block], wd.p.rows
                )
                assert s0.has_cone(carrier), a
                assert carrier.contains(gf.nu_vector(a, n), "relative_interior")


def test_sigma1_simplicial_with_column_rays():
    for n in (3, 4):
        wd = gr.weights(n)
        fan = gf.sigma_fan_cached(n, 1)
        assert fan.is_simplicial
        columns = {primitive_vector(wd.v[p]) for p in gr.pairs(n)[0]}
        assert set(fan.rays) <= columns


def test_nu_order_empty_n3():
    assert gf.nu_order(3) == []


def test_nu_rays_n4():
    order = gf.nu_order(4)
    assert [sorted(tb.block) for tb in order] == [[2, 3], [2, 4], [3, 4]]
    for a, b in itertools.combinations(order, 2):
        assert not (a.block <= b.block or b.block <= a.block)


def test_nu_vector_fixture_n3():
    wd = gr.weights(3)
    assert gf.nu_vector([2, 3], 3) == wd.v[(0, 1)]
    expanded = tuple(
        wd.v[(0, 2)][r] + wd.v[(0, 3)][r] + 2 * wd.v[(2, 3)][r] for r in range(3)
    )
    assert expanded == (-1, -1, 0)


def test_nu_block_expressions_agree():
    for n in (4, 5):
        for tb in gr.true_two_blocks(n):
            assert gf.nu_vector(tb.block, n) == gf.nu_vector(tb.complement, n)
            gf.nu_ray(tb)


def test_nu_ray_rejects_thin_partition():
    with pytest.raises(ValueError):
        gf.nu_ray(TwoBlock(4, frozenset({2})))


def test_sigma_r_n3_equals_sigma1():
    assert gf.sigma_r(3) == gf.sigma_fan_cached(3, 1)


def test_sigma_r_n4_rays():
    s1 = gf.sigma_fan_cached(4, 1)
    sr = gf.sigma_r(4)
    assert len(sr.rays) == len(s1.rays) + 3
    for tb in gr.true_two_blocks(4):
        assert gf.nu_ray(tb) in set(sr.rays)


def test_sigma_r_carriers_interior():
    for n in (4, 5):
        s1 = gf.sigma_fan_cached(n, 1)
        for tb in gr.true_two_blocks(n):
            carrier = gf.sigma_r_carrier(tb)
            assert carrier.contains(gf.nu_ray(tb), "relative_interior")
            assert s1.has_cone(carrier)


def test_sigma_r_second_linear_extension():
    assert gf.sigma_r(4, check_extension=True) == gf.sigma_r(4)


def test_gkz_cone_relint_and_region_stability():
    # two points in the relative interior of the same chamber give one cone
    c1 = gf.gkz_cone((1, 2, 3), 3)
    c2 = gf.gkz_cone((2, 3, 7), 3)
    assert c1.contains((1, 2, 3), "relative_interior")
    assert c1 == c2
    c3 = gf.gkz_cone((-1, -1, -1), 3)
    assert c3 != c1


def test_gkz_cones_along_delta():
    """Column cones with Y-set complements meet Delta in their relative
    interior, and the GKZ cone of any point of Delta keeps that point, hence
    a piece of Delta, in its own relative interior."""
    wd = gr.weights(3)
    all_pairs = gr.pairs(3)[0]
    for mask in range(1 << 6):
        members = frozenset(p for k, p in enumerate(all_pairs) if mask >> k & 1)
        expected = gr.is_y_set(YSet(3, frozenset(all_pairs) - members))
        sigma_j = Cone.from_generators([wd.v[p] for p in members], 3)
        assert gr.delta_meets_relint(sigma_j, wd) == expected
        if not expected or not members:
            continue
        rep = tuple(sum(wd.v[p][r] for p in members) for r in range(3))
        if any(rep) and gr.delta_contains(rep, wd):
            sigma = gf.gkz_cone(rep, 3)
            assert gr.delta_meets_relint(sigma, wd)


def test_delta_reduction_n3_is_sigma1():
    assert gf.delta_reduction(3) == gf.sigma_fan_cached(3, 1)


def test_delta_reduction_guard():
    with pytest.raises(GuardExceeded):
        gf.delta_reduction(5)


def test_verify_delta_subfan_n3():
    rep = gf.verify_delta_subfan(3)
    assert rep["result"]
    assert all(c["matched"] for c in rep["certificates"])


def test_delta_witnesses_in_relint():
    data = gf._delta_reduction_data(3)
    wd = gr.weights(3)
    for c in data.fan.maximal:
        wit = data.witnesses[(c.facets, c.span_eqs)]
        assert c.contains(wit, "relative_interior")
        assert gr.delta_contains(wit, wd)


def test_ray_classification_n3():
    rep = gf.verify_ray_classification(3)
    assert rep["result"]
    assert rep["unexpected"] == []
    assert not rep["v01_ray_of_sigma0"]
    assert rep["v01_ray_of_sigma1"]


def test_verify_walls_and_star_reports():
    assert gf.verify_walls(3)["result"]
    assert gf.verify_star_subfan(3)["result"]
    assert gf.verify_nu_equality(4)["result"]


# -- center ideals ------------------------------------------------------------


def test_center_ideal_fixture():
    s0 = gf.sigma_fan_cached(3, 0)
    nu = gf.nu_vector([2, 3], 3)
    ideal = gf.center_ideal(s0, nu, 3)
    assert ideal.carrier_pairs == ((0, 2), (0, 3), (2, 3))
    assert ideal.alphas == (1, 1, 2)
    assert ideal.c == 2
    assert set(ideal.exponents) == {(2, 0, 0), (1, 1, 0), (0, 2, 0), (0, 0, 1)}
    assert set(ideal.pullback_generators) == {
        "T2^2",
        "T2*T3",
        "T3^2",
        "T2*S3-T3*S2",
    }
    displayed = gf.center_pullback([2, 3], 3)
    assert set(displayed) == {"T2^2", "T3^2", "T2*S3-T3*S2"}
    assert set(ideal.pullback_generators) - set(displayed) == {"T2*T3"}


def test_center_pullback_schema_n4():
    out = gf.center_pullback([2, 3, 4], 4)
    assert "T2*S3-T3*S2" in out and "T2*S4-T4*S2" in out and "T3*S4-T4*S3" in out
    assert {"T2^2", "T3^2", "T4^2"} <= set(out)


def test_center_ideal_mirror_block():
    # a carrier built on pairs through index 1 pulls back into the second
    # homogeneous coordinates
    wd = gr.weights(3)
    s0 = gf.sigma_fan_cached(3, 0)
    nu = tuple(
        wd.v[(1, 2)][r] + wd.v[(1, 3)][r] + 2 * wd.v[(2, 3)][r] for r in range(3)
    )
    ideal = gf.center_ideal(s0, nu, 3)
    assert ideal.carrier_pairs == ((1, 2), (1, 3), (2, 3))
    assert set(ideal.pullback_generators) == {
        "S2^2",
        "S2*S3",
        "S3^2",
        "T2*S3-T3*S2",
    }


def test_center_ideal_outside_support():
    s0 = gf.sigma_fan_cached(3, 0)
    with pytest.raises(ValueError):
        gf.center_ideal(s0, (1, 1, -5), 3)


def test_center_pullback_rejects_bad_block():
    with pytest.raises(ValueError):
        gf.center_pullback([3], 3)
    with pytest.raises(ValueError):
        gf.center_pullback([1, 2], 3)


# -- invariance under the choice of Gale dual ---------------------------------


def test_downstream_invariance_under_permuted_gale_dual():
    """An alternative kernel (permuted column elimination order) must leave
    the combinatorial statements unchanged."""
    n = 4
    wd = gr.weights(n)
    all_pairs = gr.pairs(n)[0]
    m = len(all_pairs)
    perm = list(range(m))
    rng = random.Random(6)
    rng.shuffle(perm)
    qrows = [[int(wd.q.row(r)[perm[k]]) for k in range(m)] for r in range(n)]
    kperm = kernel_basis(QMatrix.from_rows(qrows))
    # undo the permutation on columns
    prows = [
        [int(kperm.row(i)[perm.index(k)]) for k in range(m)]
        for i in range(kperm.rows)
    ]
    alt = QMatrix.from_rows(prows)
    assert alt.matmul(wd.q.transpose()).is_zero()
    vcols = {
        p: tuple(int(alt.row(r)[k]) for r in range(alt.rows))
        for k, p in enumerate(all_pairs)
    }

    def alt_nu(block):
        block = sorted(block)
        total = [0] * alt.rows
        for i in block:
            for r in range(alt.rows):
                total[r] += vcols[(0, i)][r]
        for j, k in itertools.combinations(block, 2):
            for r in range(alt.rows):
                total[r] += 2 * vcols[(j, k)][r]
        return tuple(total)

    for tb in gr.true_two_blocks(n):
        assert alt_nu(tb.block) == alt_nu(tb.complement)
        carrier_pairs = [
            p for p in all_pairs if set(p) <= set(tb.block) | {0}
        ]
        carrier = Cone.from_generators([vcols[p] for p in carrier_pairs], alt.rows)
        assert carrier.contains(alt_nu(tb.block), "relative_interior")
