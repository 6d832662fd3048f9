"""GIT fans of the Grassmannian cone and the blow-up pipeline.

Chambers are enumerated twice, by wall-sign regions and by the defining
intersection of Y-set cones, and the two paths are compared; the ambient
fans of the two distinguished chambers feed the iterated stellar subdivision
toward the reduced tropical fan, which is checked cone by cone against it.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import grassmann as gr
from .exact_linalg import QMatrix, QVector, primitive_vector, solve
from .grassmann import GuardExceeded, Pair, TwoBlock, YSet
from .polyhedral import (
    Cone,
    Fan,
    fan_from_maximal,
    is_subfan,
    stellar_subdivide,
)


class ChamberCertificationError(AssertionError):
    """A wall-sign region disagreed with the defining chamber intersection."""

    def __init__(self, rep, region_cone, chamber_cone):
        super().__init__(f"chamber certification failed at {rep}")
        self.rep = rep
        self.region_cone = region_cone
        self.chamber_cone = chamber_cone


def _guard(n: int, limit: int, what: str, force: bool) -> None:
    if n > limit and not force:
        raise GuardExceeded(f"{what} guarded at n <= {limit}, got {n}")


@dataclass(frozen=True)
class GitChamber:
    cone: Cone
    defining_ysets: tuple[frozenset[Pair], ...]


@dataclass(frozen=True)
class EnvelopeSets:
    chamber: GitChamber
    sets: tuple[frozenset[Pair], ...]


# ---------------------------------------------------------------------------
# cones of weight columns
# ---------------------------------------------------------------------------


def omega(n: int) -> Cone:
    """The positive orthant, support of the GIT fan."""
    eye = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    return Cone.from_generators(eye, n)


def omega_star(n: int) -> Cone:
    """cone(e_i + e_j), support of the GIT fan of the smaller Grassmannian."""
    gens = [
        tuple(1 if r in (i, j) else 0 for r in range(1, n + 1))
        for i in range(1, n + 1)
        for j in range(i + 1, n + 1)
    ]
    return Cone.from_generators(gens, n)


def _reduced_members(members: frozenset[Pair]) -> frozenset[Pair]:
    """Extremal generator pairs of the weight cone: drop {j,k} when both
    {0,j} and {0,k} are present (w_jk = w_0j + w_0k is then redundant)."""
    return frozenset(
        p
        for p in members
        if p[0] == 0 or not ((0, p[0]) in members and (0, p[1]) in members)
    )


@dataclass(frozen=True)
class _WeightCones:
    """Distinct cones omega_I over a family of index sets, with the grouping."""

    cones: tuple[Cone, ...]
    groups: tuple[tuple[frozenset[Pair], ...], ...]  # member sets per cone


def _weight_cone_pool(n: int, families: Sequence[frozenset[Pair]]) -> _WeightCones:
    wd = gr.weights(n)
    by_key: dict[frozenset[Pair], list[frozenset[Pair]]] = {}
    for members in families:
        by_key.setdefault(_reduced_members(members), []).append(members)
    cones = []
    groups = []
    for rkey in sorted(by_key, key=lambda s: sorted(s)):
        cones.append(Cone.from_generators([wd.w[p] for p in rkey], n))
        groups.append(tuple(sorted(by_key[rkey], key=sorted)))
    return _WeightCones(tuple(cones), tuple(groups))


@lru_cache(maxsize=None)
def _y_pool(n: int) -> _WeightCones:
    members = [
        frozenset(gr.mask_to_yset(m, n).members) for m in gr.y_set_masks(n)
    ]
    return _weight_cone_pool(n, members)


@lru_cache(maxsize=None)
def _y_star_pool(n: int) -> _WeightCones:
    """Y*-sets: subsets of the inner pairs satisfying the exchange condition."""
    _, inner = gr.pairs(n)
    members = []
    for r in range(len(inner) + 1):
        for combo in itertools.combinations(inner, r):
            ys = YSet(n, frozenset(combo))
            if gr.is_y_set(ys):
                members.append(ys.members)
    return _weight_cone_pool(n, members)


def _scale_point(w: Sequence) -> tuple[int, ...]:
    return primitive_vector([Fraction(x) for x in w]) if any(w) else tuple(0 for _ in w)


def _chamber_from_pool(w: Sequence, n: int, pool: _WeightCones, support: Cone) -> GitChamber:
    pt = _scale_point(w)
    if len(pt) != n:
        raise ValueError("point has wrong dimension")
    if not support.contains(pt):
        raise ValueError(f"point {tuple(w)} lies outside the support")
    ineqs: list = []
    eqs: list = []
    defining: list[frozenset[Pair]] = []
    for cone, group in zip(pool.cones, pool.groups):
        if cone.contains(pt):
            ineqs.extend(cone.facets)
            eqs.extend(cone.span_eqs)
            defining.extend(group)
    cone = Cone.from_inequalities(ineqs, eqs, ambient=n)
    return GitChamber(cone, tuple(sorted(defining, key=sorted)))


def chamber(w: Sequence, n: int) -> GitChamber:
    """The GIT chamber of a weight: intersection of all Y-set cones containing it."""
    return _chamber_from_pool(w, n, _y_pool(n), omega(n))


def chamber_star(w: Sequence, n: int) -> GitChamber:
    return _chamber_from_pool(w, n, _y_star_pool(n), omega_star(n))


# ---------------------------------------------------------------------------
# wall arrangement and the GIT fan
# ---------------------------------------------------------------------------


def wall_normals(n: int) -> list[tuple[TwoBlock, tuple[int, ...]]]:
    return [
        (tb, gr.two_block_hyperplane(tb)) for tb in gr.all_two_blocks(n)
    ]


@lru_cache(maxsize=None)
def _wall_regions(n: int, star: bool) -> tuple:
    from .polyhedral import arrangement_leaves

    support = omega_star(n) if star else omega(n)
    walls = [normal for _, normal in wall_normals(n)]
    leaves = arrangement_leaves(
        n, support.facets, walls, base_eqs=support.span_eqs
    )
    return tuple(
        (Cone.from_generators(leaf.rays, n), leaf.representative())
        for leaf in leaves
    )


@lru_cache(maxsize=None)
def wall_fan(n: int, force: bool = False) -> Fan:
    """The fan cut out of the orthant directly by the two-block walls."""
    _guard(n, 5, "wall_fan", force)
    return fan_from_maximal([cone for cone, _ in _wall_regions(n, False)])


@lru_cache(maxsize=None)
def git_fan(n: int, force: bool = False) -> Fan:
    """GIT fan by sign-region enumeration, every region certified against the
    defining intersection formula; disagreement raises."""
    _guard(n, 5, "git_fan", force)
    chambers = []
    for region_cone, rep in _wall_regions(n, False):
        ch = chamber(rep, n)
        if ch.cone != region_cone:
            raise ChamberCertificationError(rep, region_cone, ch.cone)
        chambers.append(ch.cone)
    return fan_from_maximal(chambers)


@lru_cache(maxsize=None)
def git_fan_star(n: int, force: bool = False) -> Fan:
    _guard(n, 5, "git_fan_star", force)
    chambers = []
    for region_cone, rep in _wall_regions(n, True):
        ch = chamber_star(rep, n)
        if ch.cone != region_cone:
            raise ChamberCertificationError(rep, region_cone, ch.cone)
        chambers.append(ch.cone)
    return fan_from_maximal(chambers)


# ---------------------------------------------------------------------------
# the distinguished chambers and their ambient fans
# ---------------------------------------------------------------------------


def _f1(n: int) -> tuple[int, ...]:
    return tuple(1 if i == 0 else -1 for i in range(n))


def _f1j(n: int, j: int) -> tuple[int, ...]:
    return tuple(1 if i + 1 in (1, j) else -1 for i in range(n))


@lru_cache(maxsize=None)
def lambda0(n: int) -> GitChamber:
    """The chamber on the w_01 side of the first wall."""
    if n < 3:
        raise ValueError("need n >= 3")
    eye = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    cone = Cone.from_inequalities(eye + [_f1(n)], ambient=n)
    ch = chamber(cone.relint_point(), n)
    if ch.cone != cone:
        raise ChamberCertificationError(cone.relint_point(), cone, ch.cone)
    return ch


@lru_cache(maxsize=None)
def lambda1(n: int) -> GitChamber:
    """The adjacent chamber across ker(f1), inside the smaller support."""
    if n < 3:
        raise ValueError("need n >= 3")
    eye = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    neg_f1 = tuple(-x for x in _f1(n))
    cone = Cone.from_inequalities(
        eye + [neg_f1] + [_f1j(n, j) for j in range(2, n + 1)], ambient=n
    )
    ch = chamber(cone.relint_point(), n)
    if ch.cone != cone:
        raise ChamberCertificationError(cone.relint_point(), cone, ch.cone)
    return ch


@lru_cache(maxsize=None)
def _enveloping_witnesses(n: int, lam_key) -> tuple[frozenset[Pair], ...]:
    """Y-sets J with relint(lam) inside relint(omega_J): the witnesses whose
    supersets are exactly the enveloping sets."""
    lam = lambda0(n) if lam_key == 0 else lambda1(n)
    pool = _y_pool(n)
    rep = lam.cone.relint_point()
    out: list[frozenset[Pair]] = []
    for cone, group in zip(pool.cones, pool.groups):
        if not cone.contains(rep, "relative_interior"):
            continue
        if all(cone.contains(g) for g in lam.cone.generators()):
            out.extend(group)
    return tuple(sorted(out, key=sorted))


def _lam_key(lam: GitChamber, n: int) -> int:
    if lam == lambda0(n):
        return 0
    if lam == lambda1(n):
        return 1
    raise ValueError("expected one of the two distinguished chambers")


def envelope_sets(lam: GitChamber, n: int, force: bool = False) -> EnvelopeSets:
    """All enveloping sets of the chamber (explicit sweep; small n only).

    A set I qualifies iff it contains a witness J with
    relint(lam) in relint(omega_J); relint(omega_J) in relint(omega_I) is
    then automatic because omega_J is full dimensional.
    """
    _guard(n, 4, "envelope_sets", force)
    witnesses = _enveloping_witnesses(n, _lam_key(lam, n))
    all_pairs, _ = gr.pairs(n)
    idx = {p: k for k, p in enumerate(all_pairs)}
    wit_masks = [sum(1 << idx[p] for p in j) for j in witnesses]
    sets = []
    for mask in range(1 << len(all_pairs)):
        if any(mask & wm == wm for wm in wit_masks):
            sets.append(
                frozenset(p for k, p in enumerate(all_pairs) if mask >> k & 1)
            )
    return EnvelopeSets(lam, tuple(sorted(sets, key=sorted)))


@lru_cache(maxsize=None)
def sigma_fan_cached(n: int, lam_key: int, force: bool = False) -> Fan:
    wd = gr.weights(n)
    witnesses = _enveloping_witnesses(n, lam_key)
    minimal = [
        j for j in witnesses if not any(k < j for k in witnesses if k != j)
    ]
    all_pairs = set(gr.pairs(n)[0])
    dim = wd.p.rows
    cones = []
    for j in minimal:
        complement = all_pairs - j
        cones.append(Cone.from_generators([wd.v[p] for p in complement], dim))
    fan = fan_from_maximal(cones)
    if not fan.is_simplicial:
        raise AssertionError(f"ambient fan for lambda{lam_key} is not simplicial")
    return fan


def sigma_fan(lam: GitChamber, n: int) -> Fan:
    """The ambient toric fan of the chamber: cones on column complements of
    enveloping sets, assembled from the minimal witnesses and validated."""
    return sigma_fan_cached(n, _lam_key(lam, n))


# ---------------------------------------------------------------------------
# the subdivision rays
# ---------------------------------------------------------------------------


def nu_vector(a: Iterable[int], n: int) -> tuple[int, ...]:
    """sum of v_0i over the block plus twice the v_jk inside it."""
    a = sorted(set(a))
    wd = gr.weights(n)
    dim = wd.p.rows
    total = [0] * dim
    for i in a:
        for r in range(dim):
            total[r] += wd.v[(0, i)][r]
    for j, k in itertools.combinations(a, 2):
        for r in range(dim):
            total[r] += 2 * wd.v[(j, k)][r]
    return tuple(total)


def nu_ray(tb: TwoBlock) -> tuple[int, ...]:
    """Primitive subdivision ray of a true two-block partition; the two block
    expressions are asserted to agree exactly."""
    if not tb.is_true:
        raise ValueError("need a true two-block partition (both blocks >= 2)")
    v1 = nu_vector(tb.block, tb.n)
    v2 = nu_vector(tb.complement, tb.n)
    if v1 != v2:
        raise AssertionError(f"block expressions disagree for {tb}: {v1} != {v2}")
    return primitive_vector(v1)


def nu_order(n: int) -> list[TwoBlock]:
    """True partitions in subdivision order: descending block size, then lex."""
    return sorted(
        gr.true_two_blocks(n), key=lambda tb: (-len(tb.block), sorted(tb.block))
    )


def sigma_r_carrier(tb: TwoBlock) -> Cone:
    wd = gr.weights(tb.n)
    block = set(tb.block) | {0}
    gens = [wd.v[p] for p in gr.pairs(tb.n)[0] if set(p) <= block]
    return Cone.from_generators(gens, wd.p.rows)


@lru_cache(maxsize=None)
def sigma_r(n: int, force: bool = False, check_extension: bool = False) -> Fan:
    """Iterated stellar subdivision of the lambda1 ambient fan in the nu rays,
    in descending order; each carrier is verified before subdividing."""
    _guard(n, 5, "sigma_r", force)
    base = sigma_fan_cached(n, 1)
    fan = _sigma_r_with_order(base, nu_order(n))
    if check_extension:
        alt = sorted(
            gr.true_two_blocks(n),
            key=lambda tb: (-len(tb.block), [-i for i in sorted(tb.block)]),
        )
        fan_alt = _sigma_r_with_order(base, alt)
        if fan != fan_alt:
            raise AssertionError("sigma_r depends on the linear extension")
    return fan


def _sigma_r_with_order(base: Fan, order: Sequence[TwoBlock]) -> Fan:
    fan = base
    for tb in order:
        carrier = sigma_r_carrier(tb)
        ray = nu_ray(tb)
        if not base.has_cone(carrier):
            raise AssertionError(f"carrier of {tb} missing from the base fan")
        if not fan.has_cone(carrier):
            raise AssertionError(f"carrier of {tb} vanished before its turn")
        if not carrier.contains(ray, "relative_interior"):
            raise AssertionError(f"nu ray of {tb} not interior to its carrier")
        fan = stellar_subdivide(fan, ray)
    return fan


# ---------------------------------------------------------------------------
# GKZ cones and the Delta-reduction
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _gkz_pool(n: int) -> tuple[Cone, ...]:
    wd = gr.weights(n)
    all_pairs, _ = gr.pairs(n)
    dim = wd.p.rows
    seen = {}
    for r in range(len(all_pairs) + 1):
        for combo in itertools.combinations(all_pairs, r):
            c = Cone.from_generators([wd.v[p] for p in combo], dim)
            seen.setdefault((c.facets, c.span_eqs), c)
    return tuple(seen.values())


def gkz_cone(v: Sequence, n: int, force: bool = False) -> Cone:
    """GKZ cone of a point: intersection of all column-spanned cones whose
    relative interior contains it."""
    _guard(n, 4, "gkz_cone", force)
    pt = tuple(int(x) for x in v)
    ineqs: list = []
    eqs: list = []
    found = False
    for c in _gkz_pool(n):
        if c.contains(pt, "relative_interior"):
            found = True
            ineqs.extend(c.facets)
            eqs.extend(c.span_eqs)
    if not found:
        raise ValueError(f"point {pt} lies in no column cone's relative interior")
    dim = gr.weights(n).p.rows
    sigma = Cone.from_inequalities(ineqs, eqs, ambient=dim)
    if not sigma.contains(pt, "relative_interior"):
        raise AssertionError("GKZ cone does not contain its point in relint")
    return sigma


@lru_cache(maxsize=None)
def _gkz_walls(n: int) -> tuple[tuple[int, ...], ...]:
    """Hyperplanes spanned by columns: the span normals of codim-1 pool cones."""
    dim = gr.weights(n).p.rows
    walls = set()
    for c in _gkz_pool(n):
        if c.dim == dim - 1:
            normal = c.span_eqs[0]
            if next(x for x in normal if x) < 0:
                normal = tuple(-x for x in normal)
            walls.add(normal)
    return tuple(sorted(walls))


def _int_rank(vectors: Sequence[Sequence[int]]) -> int:
    from .polyhedral import _int_rank as pr

    return pr(vectors)


@dataclass(frozen=True)
class DeltaReduction:
    fan: Fan
    witnesses: dict
    tree_count: int
    rep_count: int


@lru_cache(maxsize=None)
def _delta_reduction_data(n: int, force: bool = False) -> DeltaReduction:
    _guard(n, 4, "delta_reduction", force)
    from .polyhedral import arrangement_leaves

    wd = gr.weights(n)
    dim = wd.p.rows
    sign = gr.tropical_sign()
    walls = _gkz_walls(n)
    lin = gr.lineality_image(wd)
    pool = _gkz_pool(n)
    proper_spans = sorted(
        {c.span_eqs for c in pool if 0 < len(c.span_eqs)}
    )

    def generic_rep(rays: Sequence[tuple[int, ...]], lins: Sequence[tuple[int, ...]]):
        vecs = list(rays) + list(lins)
        if not vecs:
            return tuple(0 for _ in range(dim))
        for k in range(1, 64):
            rep = tuple(
                sum(k**e * v[i] for e, v in enumerate(vecs)) for i in range(dim)
            )
            ok = True
            for span in proper_spans:
                if all(sum(a * b for a, b in zip(eq, rep)) == 0 for eq in span):
                    if not all(
                        all(sum(a * b for a, b in zip(eq, v)) == 0 for eq in span)
                        for v in vecs
                    ):
                        ok = False
                        break
            if ok:
                return rep
        raise AssertionError("no generic representative found")

    profiles: dict[frozenset[int], tuple[Cone, tuple[int, ...]]] = {}
    rep_count = 0
    trees = gr.trivalent_trees(n)
    for tree in trees:
        basis = [
            tuple(sign * x for x in gr.split_image(wd, block)) for block in tree
        ] + [lin]
        if _int_rank(basis) != len(basis):
            raise AssertionError("tree cone image is degenerate")
        twalls: set[tuple[int, ...]] = set()
        for a in walls:
            ta = tuple(sum(x * y for x, y in zip(a, b)) for b in basis)
            if any(ta):
                ta = primitive_vector(ta)
                if next(x for x in ta if x) < 0:
                    ta = tuple(-x for x in ta)
                twalls.add(ta)
        # coordinate hyperplanes slice the tree cone image out of its span
        k = len(basis)
        for i in range(len(tree)):
            coord = tuple(1 if j == i else 0 for j in range(k))
            twalls.add(coord)
        leaves = arrangement_leaves(k, [], sorted(twalls), with_boundaries=True)
        for leaf in leaves:
            amb_rays = [
                tuple(sum(r[j] * basis[j][i] for j in range(k)) for i in range(dim))
                for r in leaf.rays
            ]
            amb_lins = [
                tuple(sum(l[j] * basis[j][i] for j in range(k)) for i in range(dim))
                for l in leaf.lineality
            ]
            rep = generic_rep(amb_rays, amb_lins)
            rep_count += 1
            if not gr.delta_contains(rep, wd):
                continue
            profile = frozenset(
                i
                for i, c in enumerate(pool)
                if c.contains(rep, "relative_interior")
            )
            if profile in profiles:
                continue
            ineqs: list = []
            eqs: list = []
            for i in profile:
                ineqs.extend(pool[i].facets)
                eqs.extend(pool[i].span_eqs)
            sigma = Cone.from_inequalities(ineqs, eqs, ambient=dim)
            if not sigma.contains(rep, "relative_interior"):
                raise AssertionError("Delta representative escapes its GKZ cone")
            profiles[profile] = (sigma, rep)

    by_key: dict[tuple, tuple[Cone, tuple[int, ...]]] = {}
    for sigma, rep in profiles.values():
        by_key.setdefault((sigma.facets, sigma.span_eqs), (sigma, rep))
    cones = [c for c, _ in by_key.values()]
    maximal = [
        c
        for c in cones
        if not any(d is not c and d.contains_cone(c) for d in cones)
    ]
    fan = fan_from_maximal(maximal)
    witnesses = {
        (c.facets, c.span_eqs): by_key[(c.facets, c.span_eqs)][1]
        for c in fan.maximal
    }
    return DeltaReduction(fan, witnesses, len(trees), rep_count)


def delta_reduction(n: int, force: bool = False) -> Fan:
    """The Delta-reduction of the GKZ fan: maximal GKZ cones whose relative
    interiors meet the projected tropical variety, closed under faces."""
    return _delta_reduction_data(n, force).fan


# ---------------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------------


def verify_walls(n: int, force: bool = False) -> dict:
    """Two-path GIT fan check plus the counted facts at n = 3, 4."""
    certificates = []
    result = True
    try:
        gf = git_fan(n, force)
        wf = wall_fan(n, force)
        if gf != wf:
            result = False
            certificates.append({"kind": "fan-mismatch"})
    except ChamberCertificationError as err:
        result = False
        certificates.append(
            {
                "kind": "chamber-certification",
                "rep": list(err.rep),
                "region": [list(r) for r in err.region_cone.rays],
                "chamber": [list(r) for r in err.chamber_cone.rays],
            }
        )
        gf = None
    counts = {}
    if gf is not None:
        counts["walls"] = len(wall_normals(n))
        counts["maximal_chambers"] = len(gf.maximal)
        star = omega_star(n)
        counts["chambers_inside_star"] = sum(
            1 for c in gf.maximal if star.contains_cone(c)
        )
        expected = {3: (3, 4, 1), 4: (7, 12, 8)}
        if n in expected:
            ew, ec, es = expected[n]
            if n == 3:
                ok = counts["walls"] == ew and counts["maximal_chambers"] == ec
            else:
                ok = (
                    counts["maximal_chambers"] == ec
                    and counts["chambers_inside_star"] == es
                )
            if not ok:
                result = False
                certificates.append({"kind": "counted-facts", "counts": counts})
    return {
        "claim": "walls",
        "n": n,
        "result": result,
        "counts": counts,
        "certificates": certificates,
    }


def verify_star_subfan(n: int, force: bool = False) -> dict:
    ok = is_subfan(git_fan_star(n, force), git_fan(n, force))
    return {"claim": "star-subfan", "n": n, "result": ok, "certificates": []}


def verify_nu_equality(n: int, force: bool = False) -> dict:
    """nu well-definedness: identical block expressions, difference of the
    coefficient vectors in the row space of Q with unit coefficients, and the
    carrier membership in both ambient fans."""
    wd = gr.weights(n)
    all_pairs, _ = gr.pairs(n)
    certificates = []
    result = True
    sigma1 = sigma_fan_cached(n, 1)
    for tb in gr.true_two_blocks(n):
        entry = {"block": sorted(tb.block)}
        try:
            ray = nu_ray(tb)
        except AssertionError as err:
            result = False
            entry["error"] = str(err)
            certificates.append(entry)
            continue
        coeff1 = {p: 0 for p in all_pairs}
        for i in tb.block:
            coeff1[(0, i)] += 1
        for j, k in itertools.combinations(sorted(tb.block), 2):
            coeff1[(j, k)] += 2
        coeff2 = {p: 0 for p in all_pairs}
        for i in tb.complement:
            coeff2[(0, i)] += 1
        for j, k in itertools.combinations(sorted(tb.complement), 2):
            coeff2[(j, k)] += 2
        diff = [coeff1[p] - coeff2[p] for p in all_pairs]
        urow = [0] * len(all_pairs)
        for i in range(1, n + 1):
            s = 1 if i in tb.block else -1
            row = wd.q.row(i - 1)
            for k, x in enumerate(row.entries):
                urow[k] += s * int(x)
        if diff != urow:
            result = False
            entry["error"] = "difference not the signed row sum of Q"
            certificates.append(entry)
            continue
        carrier = sigma_r_carrier(tb)
        if not carrier.contains(ray, "relative_interior"):
            result = False
            entry["error"] = "nu ray not interior to its carrier"
            certificates.append(entry)
            continue
        if not sigma1.has_cone(carrier):
            result = False
            entry["error"] = "carrier missing from the lambda1 ambient fan"
            certificates.append(entry)
    # carriers over lambda0 exist for every block of size >= 2
    witnesses0 = _enveloping_witnesses(n, 0)
    all_pairs_set = set(all_pairs)
    for size in range(2, n):
        for a in itertools.combinations(range(2, n + 1), size):
            block = set(a) | {0}
            k_set = frozenset(p for p in all_pairs if set(p) <= block)
            complement = frozenset(all_pairs_set - k_set)
            if not any(j <= complement for j in witnesses0):
                result = False
                certificates.append(
                    {"block": sorted(a), "error": "carrier missing from Sigma_0"}
                )
    return {
        "claim": "nu-equality",
        "n": n,
        "result": result,
        "certificates": certificates,
    }


def verify_delta_subfan(n: int, force: bool = False) -> dict:
    """The pipeline theorem at desk scale: the Delta-reduction is a subfan of
    the iterated stellar subdivision, with cone-by-cone certificates."""
    data = _delta_reduction_data(n, force)
    sr = sigma_r(n, force)
    certificates = []
    ok = True
    for c in data.fan.maximal:
        match = next((m for m in sr.maximal if c.is_face_of(m)), None)
        witness = data.witnesses[(c.facets, c.span_eqs)]
        entry = {
            "delta_cone_rays": [list(r) for r in c.rays],
            "delta_witness": list(witness),
            "matched": match is not None,
        }
        if match is not None:
            entry["sigma_r_cone_rays"] = [list(r) for r in match.rays]
        else:
            ok = False
        certificates.append(entry)
    subfan = is_subfan(data.fan, sr)
    if subfan != ok:
        raise AssertionError("is_subfan disagrees with the certificate scan")
    return {
        "claim": "delta-subfan",
        "n": n,
        "result": ok,
        "delta_maximal": len(data.fan.maximal),
        "sigma_r_maximal": len(sr.maximal),
        "certificates": certificates,
    }


def verify_ray_classification(n: int, force: bool = False) -> dict:
    """Rays of the Delta-reduction against the predicted candidates, plus the
    contraction check on the lambda0 ambient fan."""
    wd = gr.weights(n)
    data = _delta_reduction_data(n, force)
    candidates: dict[tuple[int, ...], str] = {}
    for p in gr.pairs(n)[1]:
        candidates[primitive_vector(wd.v[p])] = f"v_{p[0]}{p[1]}"
    for i in range(1, n + 1):
        candidates[primitive_vector(wd.v[(0, i)])] = f"v_0{i}"
    for tb in gr.true_two_blocks(n):
        candidates[nu_ray(tb)] = "nu_" + "".join(map(str, sorted(tb.block)))
    rays = set(data.fan.rays)
    unexpected = sorted(r for r in rays if r not in candidates)
    occurring = sorted(name for r, name in candidates.items() if r in rays)
    sigma0 = sigma_fan_cached(n, 0)
    sigma1 = sigma_fan_cached(n, 1)
    v01 = primitive_vector(wd.v[(0, 1)])
    sr_rays = set(sigma_r(n, force).rays)
    nu_rays_present = all(nu_ray(tb) in sr_rays for tb in gr.true_two_blocks(n))
    result = not unexpected and v01 not in set(sigma0.rays) and nu_rays_present
    return {
        "claim": "rays",
        "n": n,
        "result": result,
        "occurring": occurring,
        "unexpected": [list(r) for r in unexpected],
        "v01_ray_of_sigma0": v01 in set(sigma0.rays),
        "v01_ray_of_sigma1": v01 in set(sigma1.rays),
        "nu_rays_in_sigma_r": nu_rays_present,
        "certificates": [],
    }


# ---------------------------------------------------------------------------
# blow-up center ideals
# ---------------------------------------------------------------------------


Monomial = tuple[tuple[int, ...], tuple[int, ...]]  # T exponents, S exponents


def _poly_mul(a: dict[Monomial, int], b: dict[Monomial, int], nvars: int) -> dict:
    out: dict[Monomial, int] = {}
    for (ta, sa), ca in a.items():
        for (tb, sb), cb in b.items():
            key = (
                tuple(x + y for x, y in zip(ta, tb)),
                tuple(x + y for x, y in zip(sa, sb)),
            )
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def _poly_str(poly: dict[Monomial, int], n: int) -> str:
    def mono_str(texp, sexp):
        parts = []
        for i in range(2, n + 1):
            e = texp[i - 2]
            if e == 1:
                parts.append(f"T{i}")
            elif e > 1:
                parts.append(f"T{i}^{e}")
        for i in range(2, n + 1):
            e = sexp[i - 2]
            if e == 1:
                parts.append(f"S{i}")
            elif e > 1:
                parts.append(f"S{i}^{e}")
        return "*".join(parts) if parts else "1"

    terms = sorted(poly.items(), key=lambda kv: (kv[0][0], kv[0][1]), reverse=True)
    out = ""
    for (texp, sexp), coeff in terms:
        mono = mono_str(texp, sexp)
        if coeff < 0:
            out += "-" if abs(coeff) == 1 else f"-{abs(coeff)}*"
        elif out:
            out += "+" if coeff == 1 else f"+{coeff}*"
        elif coeff != 1:
            out += f"{coeff}*"
        out += mono
    return out


def _pullback_monomial(exponent: dict[Pair, int], n: int) -> dict[Monomial, int]:
    """Substitute homogeneous coordinates: the pair {0,i} maps to T_i, the
    pair {1,j} to S_j, and an inner pair {j,k} to T_j S_k - T_k S_j."""
    nv = n - 1
    zero = tuple(0 for _ in range(nv))
    poly: dict[Monomial, int] = {(zero, zero): 1}
    for (i, j), e in sorted(exponent.items()):
        if e == 0:
            continue
        if i == 0 and j == 1:
            raise ValueError("the contracted coordinate has no pullback")
        if i == 0:
            t = list(zero)
            t[j - 2] = 1
            factor = {(tuple(t), zero): 1}
        elif i == 1:
            s = list(zero)
            s[j - 2] = 1
            factor = {(zero, tuple(s)): 1}
        else:
            t1, s1 = list(zero), list(zero)
            t1[i - 2] = 1
            s1[j - 2] = 1
            t2, s2 = list(zero), list(zero)
            t2[j - 2] = 1
            s2[i - 2] = 1
            factor = {(tuple(t1), tuple(s1)): 1, (tuple(t2), tuple(s2)): -1}
        for _ in range(e):
            poly = _poly_mul(poly, factor, nv)
    return poly


@dataclass(frozen=True)
class CenterIdeal:
    carrier_pairs: tuple[Pair, ...]
    alphas: tuple[int, ...]
    c: int
    exponents: tuple[tuple[int, ...], ...]  # over the carrier pairs, in order
    pullback_generators: tuple[str, ...]


def center_ideal(sigma0: Fan, nu: Sequence[int], n: int) -> CenterIdeal:
    """The toric blow-up center of a ray inside the given fan: monomials of
    degree c on the carrier, with the homogeneous-coordinate pullback."""
    wd = gr.weights(n)
    pt = primitive_vector([int(x) for x in nu])
    if not sigma0.contains_point(pt):
        raise ValueError("ray lies outside the support of the fan")
    carrier = sigma0.carrier(pt)
    ray_to_pair = {primitive_vector(wd.v[p]): p for p in gr.pairs(n)[0]}
    try:
        carrier_pairs = tuple(sorted(ray_to_pair[r] for r in carrier.rays))
    except KeyError:
        raise ValueError("carrier rays are not weight columns") from None
    if not carrier.is_simplicial:
        raise ValueError(
            "carrier is not simplicial; minimal decomposition not unique"
        )
    mat = QMatrix.from_rows([wd.v[p] for p in carrier_pairs]).transpose()
    coords = solve(mat, QVector(pt))
    if coords is None:
        raise AssertionError("carrier does not span its ray")
    den = 1
    for x in coords.entries:
        den = den * x.denominator // math.gcd(den, x.denominator)
    alphas = [int(x * den) for x in coords.entries]
    g = 0
    for a in alphas:
        g = math.gcd(g, a)
    alphas = [a // g for a in alphas]
    if any(a < 1 for a in alphas):
        raise AssertionError("ray is not interior to its carrier")
    c = 1
    for a in alphas:
        c = c * a // math.gcd(c, a)
    exps = []
    for combo in _bounded_solutions(alphas, c):
        exps.append(tuple(combo))
    generators = []
    for e in exps:
        poly = _pullback_monomial(
            {p: ev for p, ev in zip(carrier_pairs, e)}, n
        )
        generators.append(_poly_str(poly, n))
    return CenterIdeal(
        carrier_pairs, tuple(alphas), c, tuple(exps), tuple(generators)
    )


def _bounded_solutions(alphas: Sequence[int], c: int) -> list[list[int]]:
    out: list[list[int]] = []

    def rec(i: int, remaining: int, acc: list[int]):
        if i == len(alphas):
            if remaining == 0:
                out.append(list(acc))
            return
        for e in range(remaining // alphas[i] + 1):
            rec(i + 1, remaining - e * alphas[i], acc + [e])

    rec(0, c, [])
    return sorted(out, reverse=True)


def center_pullback(a: Iterable[int], n: int) -> list[str]:
    """The displayed generator schema: T_i^2 and T_jS_k - T_kS_j over the block."""
    a = sorted(set(a))
    if not set(a) <= set(range(2, n + 1)) or len(a) < 2:
        raise ValueError("block must be a subset of {2..n} with at least 2 elements")
    nv = n - 1
    zero = tuple(0 for _ in range(nv))
    out = []
    for i in a:
        t = list(zero)
        t[i - 2] = 2
        out.append(_poly_str({(tuple(t), zero): 1}, n))
    for j, k in itertools.combinations(a, 2):
        t1, s1 = list(zero), list(zero)
        t1[j - 2] = 1
        s1[k - 2] = 1
        t2, s2 = list(zero), list(zero)
        t2[k - 2] = 1
        s2[j - 2] = 1
        out.append(_poly_str({(tuple(t1), tuple(s1)): 1, (tuple(t2), tuple(s2)): -1}, n))
    return out
