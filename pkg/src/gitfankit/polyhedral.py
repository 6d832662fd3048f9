"""Exact polyhedral cones and fans.

Cones carry both descriptions in a canonical form: primitive sorted extremal
rays plus a lineality basis (V-side), and primitive irredundant facet normals
plus span equations (H-side).  Canonicalisation makes structural equality of
cones coincide with mathematical equality, so fans compare by sorted cone
lists.

The conversion engine is a double description method over plain Python
integers with the combinatorial adjacency test, run in both directions
(generators -> facets via the dual cone, facets -> generators directly).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .exact_linalg import QMatrix, QVector, primitive_vector, rref, solve

IVec = tuple[int, ...]


class FanAxiomViolation(Exception):
    """A collection of cones failed the common-face fan axiom."""

    def __init__(self, message: str, offending: tuple = ()):  # noqa: D401
        super().__init__(message)
        self.offending = offending


def _dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def _neg(a: IVec) -> IVec:
    return tuple(-x for x in a)


def _prim(v: Sequence[int]) -> IVec:
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
        if g == 1:
            return tuple(v)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def _combine(ca: int, a: Sequence[int], cb: int, b: Sequence[int]) -> IVec:
    return _prim([ca * x + cb * y for x, y in zip(a, b)])


def _int_rank(vectors: Sequence[Sequence[int]]) -> int:
    a = [list(v) for v in vectors if any(v)]
    if not a:
        return 0
    cols = len(a[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == len(a):
            break
    return r


# ---------------------------------------------------------------------------
# double description state
# ---------------------------------------------------------------------------


class _DDState:
    """Cone as lineality basis plus extremal rays, refined one halfspace at a time."""

    __slots__ = ("dim", "lin", "rays", "tights", "ninserted")

    def __init__(self, dim: int):
        self.dim = dim
        self.lin: list[IVec] = [
            tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim)
        ]
        self.rays: list[IVec] = []
        self.tights: list[frozenset[int]] = []
        self.ninserted = 0

    def copy(self) -> "_DDState":
        st = _DDState.__new__(_DDState)
        st.dim = self.dim
        st.lin = list(self.lin)
        st.rays = list(self.rays)
        st.tights = list(self.tights)
        st.ninserted = self.ninserted
        return st

    def insert(self, a: Sequence[int]) -> None:
        """Intersect the current cone with {x : a.x >= 0}."""
        idx = self.ninserted
        self.ninserted += 1
        if not any(a):
            return
        pivot = None
        for k, l in enumerate(self.lin):
            if _dot(a, l) != 0:
                pivot = k
                break
        if pivot is not None:
            l0 = self.lin.pop(pivot)
            d0 = _dot(a, l0)
            if d0 < 0:
                l0 = _neg(l0)
                d0 = -d0
            self.lin = [_combine(d0, l, -_dot(a, l), l0) for l in self.lin]
            new_rays = []
            new_tights = []
            for r, t in zip(self.rays, self.tights):
                dr = _dot(a, r)
                # projection along l0 lands every old ray on the new hyperplane
                new_rays.append(r if dr == 0 else _combine(d0, r, -dr, l0))
                new_tights.append(t | {idx})
            new_rays.append(l0)
            new_tights.append(frozenset(range(idx)))
            self.rays = new_rays
            self.tights = new_tights
            return
        pos, zero, neg = [], [], []
        for k, r in enumerate(self.rays):
            d = _dot(a, r)
            (pos if d > 0 else zero if d == 0 else neg).append((k, d))
        if not neg:
            for k, _ in zero:
                self.tights[k] = self.tights[k] | {idx}
            return
        new_rays: list[IVec] = []
        new_tights: list[frozenset[int]] = []
        for k, _ in pos:
            new_rays.append(self.rays[k])
            new_tights.append(self.tights[k])
        for k, _ in zero:
            new_rays.append(self.rays[k])
            new_tights.append(self.tights[k] | {idx})
        for kp, dp in pos:
            tp = self.tights[kp]
            for kn, dn in neg:
                t = tp & self.tights[kn]
                adjacent = True
                for ko in range(len(self.rays)):
                    if ko != kp and ko != kn and t <= self.tights[ko]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                new_rays.append(_combine(dp, self.rays[kn], -dn, self.rays[kp]))
                new_tights.append(t | {idx})
        self.rays = new_rays
        self.tights = new_tights

    def insert_equation(self, a: Sequence[int]) -> None:
        self.insert(a)
        self.insert(_neg(a))

    def cone_dim(self) -> int:
        return len(self.lin) + _int_rank(self.rays) if self.rays else len(self.lin)


def _dd(
    dim: int, ineqs: Iterable[Sequence[int]], eqs: Iterable[Sequence[int]] = ()
) -> tuple[list[IVec], list[IVec]]:
    """V-description (lineality, rays) of {x : ineqs.x >= 0, eqs.x = 0}."""
    st = _DDState(dim)
    for e in eqs:
        st.insert_equation(e)
    for a in ineqs:
        st.insert(a)
    return st.lin, st.rays


# ---------------------------------------------------------------------------
# canonicalisation helpers
# ---------------------------------------------------------------------------


def _canonical_subspace_basis(vectors: Sequence[IVec], ambient: int) -> tuple[IVec, ...]:
    """Canonical primitive basis (RREF rows) of the span of the given vectors."""
    vecs = [v for v in vectors if any(v)]
    if not vecs:
        return ()
    rows, _ = rref(QMatrix.from_rows(vecs))
    return tuple(primitive_vector(r) for r in rows)


def _solve_small(g: list[list[int]], rhs: list[int]) -> list[Fraction]:
    """Solve an invertible small integer system by Gaussian elimination."""
    k = len(g)
    a = [[Fraction(g[i][j]) for j in range(k)] + [Fraction(rhs[i])] for i in range(k)]
    for c in range(k):
        piv = next(i for i in range(c, k) if a[i][c] != 0)
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c]
        a[c] = [x / inv for x in a[c]]
        for i in range(k):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return [a[i][k] for i in range(k)]


def _reduce_mod_subspace(v: IVec, basis: Sequence[IVec]) -> IVec:
    """Orthogonal reduction of v modulo span(basis), exact over the rationals."""
    if not basis:
        return v
    gram = [[_dot(a, b) for b in basis] for a in basis]
    rhs = [_dot(a, v) for a in basis]
    y = _solve_small(gram, rhs)
    reduced = [
        Fraction(x) - sum((yi * b[j] for yi, b in zip(y, basis)), Fraction(0))
        for j, x in enumerate(v)
    ]
    if all(x == 0 for x in reduced):
        return tuple(0 for _ in v)
    return primitive_vector(reduced)


def _canonical_rays(rays: Sequence[IVec], lineality: Sequence[IVec]) -> tuple[IVec, ...]:
    out = set()
    for r in rays:
        red = _reduce_mod_subspace(r, lineality)
        if any(red):
            out.add(red)
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# Cone
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone in canonical dual form.

    ``rays`` are primitive extremal rays reduced orthogonally modulo the
    lineality space; ``facets`` are primitive irredundant inward normals
    reduced modulo the span equations.  ``facets . x >= 0`` and
    ``span_eqs . x = 0`` cut out the cone exactly.
    """

    ambient: int
    rays: tuple[IVec, ...]
    lineality: tuple[IVec, ...]
    facets: tuple[IVec, ...]
    span_eqs: tuple[IVec, ...]

    @staticmethod
    def from_generators(generators: Iterable[Sequence[int]], ambient: int) -> "Cone":
        gens: list[IVec] = []
        seen = set()
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != ambient:
                raise ValueError("generator has wrong dimension")
            if not any(g):
                continue
            g = _prim(g)
            if g not in seen:
                seen.add(g)
                gens.append(g)
        return _cone_from_gens(tuple(sorted(gens)), ambient)

    @staticmethod
    def from_inequalities(
        ineqs: Iterable[Sequence[int]],
        eqs: Iterable[Sequence[int]] = (),
        *,
        ambient: int,
    ) -> "Cone":
        cleaned_ineqs = tuple(
            sorted({_prim(tuple(int(x) for x in a)) for a in ineqs if any(a)})
        )
        cleaned_eqs = tuple(
            sorted({_prim(tuple(int(x) for x in e)) for e in eqs if any(e)})
        )
        return _cone_from_ineqs(cleaned_ineqs, cleaned_eqs, ambient)

    # -- basic queries ------------------------------------------------------

    @property
    def dim(self) -> int:
        return self.ambient - len(self.span_eqs)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_simplicial(self) -> bool:
        return self.is_pointed and len(self.rays) == self.dim

    def generators(self) -> tuple[IVec, ...]:
        """Deduplicated sorted generator list (rays plus +/- lineality basis)."""
        gens = set(self.rays)
        for l in self.lineality:
            gens.add(l)
            gens.add(_neg(l))
        return tuple(sorted(gens))

    def is_zero(self) -> bool:
        return not self.rays and not self.lineality

    def contains(self, point: Sequence[int], mode: str = "closed") -> bool:
        """Membership test; ``mode`` is "closed" or "relative_interior"."""
        if len(point) != self.ambient:
            raise ValueError("point has wrong dimension")
        if any(_dot(e, point) != 0 for e in self.span_eqs):
            return False
        if mode == "closed":
            return all(_dot(a, point) >= 0 for a in self.facets)
        if mode == "relative_interior":
            return all(_dot(a, point) > 0 for a in self.facets)
        raise ValueError(f"unknown mode {mode!r}")

    def relint_point(self) -> IVec:
        """Sum of the primitive rays: a canonical relative interior point."""
        pt = [0] * self.ambient
        for r in self.rays:
            for i, x in enumerate(r):
                pt[i] += x
        return tuple(pt)

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators())

    def intersect(self, other: "Cone") -> "Cone":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return Cone.from_inequalities(
            self.facets + other.facets,
            self.span_eqs + other.span_eqs,
            ambient=self.ambient,
        )

    def face_cut_by(self, normals: Iterable[IVec]) -> "Cone":
        """The face of this cone on which the given valid normals vanish."""
        return Cone.from_inequalities(
            self.facets, self.span_eqs + tuple(normals), ambient=self.ambient
        )

    def is_face_of(self, other: "Cone") -> bool:
        """Exact test that self is a face of other."""
        if self.ambient != other.ambient:
            return False
        gens = self.generators()
        if not all(other.contains(g) for g in gens):
            return False
        tight = [a for a in other.facets if all(_dot(a, g) == 0 for g in gens)]
        # smallest face of other containing self, by generators
        face_rays = [
            r for r in other.rays if all(_dot(a, r) == 0 for a in tight)
        ]
        for v in face_rays:
            if not self.contains(v):
                return False
        for l in other.lineality:
            if not (self.contains(l) and self.contains(_neg(l))):
                return False
        return True

    def faces(self) -> list["Cone"]:
        """All faces, from the minimal face (zero when pointed) up to the cone."""
        found: dict[tuple, Cone] = {self._key(): self}
        frontier = [self]
        while frontier:
            nxt = []
            for c in frontier:
                for a in c.facets:
                    f = c.face_cut_by((a,))
                    k = f._key()
                    if k not in found:
                        found[k] = f
                        nxt.append(f)
            frontier = nxt
        return sorted(found.values(), key=lambda c: (c.dim, c.rays, c.lineality))

    def _key(self) -> tuple:
        return (self.facets, self.span_eqs)


@lru_cache(maxsize=200_000)
def _cone_from_gens(gens: tuple[IVec, ...], ambient: int) -> Cone:
    if not gens:
        eye = tuple(
            tuple(1 if i == j else 0 for j in range(ambient)) for i in range(ambient)
        )
        return Cone(ambient, (), (), (), eye)
    # dual cone {u : u.g >= 0} gives facets (its rays) and span eqs (its lineality)
    lin_d, rays_d = _dd(ambient, gens)
    span_eqs = _canonical_subspace_basis(lin_d, ambient)
    facets = _canonical_rays(rays_d, span_eqs)
    lin_p, rays_p = _dd(ambient, facets, span_eqs)
    lineality = _canonical_subspace_basis(lin_p, ambient)
    rays = _canonical_rays(rays_p, lineality)
    return Cone(ambient, rays, lineality, facets, span_eqs)


@lru_cache(maxsize=200_000)
def _cone_from_ineqs(
    ineqs: tuple[IVec, ...], eqs: tuple[IVec, ...], ambient: int
) -> Cone:
    lin_p, rays_p = _dd(ambient, ineqs, eqs)
    lineality = _canonical_subspace_basis(lin_p, ambient)
    rays = _canonical_rays(rays_p, lineality)
    gens = set(rays)
    for l in lineality:
        gens.add(l)
        gens.add(_neg(l))
    return _cone_from_gens(tuple(sorted(gens)), ambient)


def dual_description(
    generators: Iterable[Sequence[int]], ambient: int
) -> tuple[tuple[IVec, ...], tuple[IVec, ...]]:
    """Exact H-description (facets, span equations) of cone(generators)."""
    c = Cone.from_generators(generators, ambient)
    return c.facets, c.span_eqs


# ---------------------------------------------------------------------------
# fans
# ---------------------------------------------------------------------------


def _common_face_via(c1: Cone, c2: Cone, u: IVec) -> bool:
    """Check that u certifies c1 and c2 meeting in a common face."""
    gens1 = c1.generators()
    gens2 = c2.generators()
    if any(_dot(u, g) < 0 for g in gens1):
        return False
    if any(_dot(u, g) > 0 for g in gens2):
        return False
    tight1 = [g for g in gens1 if _dot(u, g) == 0]
    tight2 = [g for g in gens2 if _dot(u, g) == 0]
    return all(c2.contains(g) for g in tight1) and all(c1.contains(g) for g in tight2)


_PAIR_CACHE: dict[tuple, bool] = {}


def _pair_has_common_face(c1: Cone, c2: Cone) -> bool:
    cache_key = tuple(sorted((c1._key(), c2._key())))
    hit = _PAIR_CACHE.get(cache_key)
    if hit is not None:
        return hit
    result = _pair_has_common_face_uncached(c1, c2)
    _PAIR_CACHE[cache_key] = result
    return result


def _pair_has_common_face_uncached(c1: Cone, c2: Cone) -> bool:
    # cheap candidates: support the common-ray face, or sum one-sided facets
    common = set(c1.rays) & set(c2.rays)
    for a, b in ((c1, c2), (c2, c1)):
        tight = [f for f in a.facets if all(_dot(f, r) == 0 for r in common)]
        if tight:
            u = tuple(sum(col) for col in zip(*tight))
            if a is c2:
                u = _neg(u)
            if any(u) and _common_face_via(c1, c2, u):
                return True
        sep = [
            f
            for f in a.facets
            if all(_dot(f, g) <= 0 for g in b.generators())
        ]
        if sep:
            u = tuple(sum(col) for col in zip(*sep))
            if a is c2:
                u = _neg(u)
            if any(u) and _common_face_via(c1, c2, u):
                return True
    # definitive certificate: relint of {u : u >= 0 on c1, u <= 0 on c2}
    constraints = list(c1.generators()) + [_neg(g) for g in c2.generators()]
    _, rays = _dd(c1.ambient, constraints)
    u = tuple(sum(col) for col in zip(*rays)) if rays else tuple(0 for _ in range(c1.ambient))
    return _common_face_via(c1, c2, u)


@dataclass(frozen=True)
class Fan:
    """Validated fan, stored through its maximal cones."""

    ambient: int
    maximal: tuple[Cone, ...]

    @property
    def rays(self) -> tuple[IVec, ...]:
        pool = set()
        for c in self.maximal:
            pool.update(c.rays)
        return tuple(sorted(pool))

    @property
    def is_simplicial(self) -> bool:
        return all(c.is_simplicial for c in self.maximal)

    def cones(self) -> dict[tuple, Cone]:
        """All cones of the fan (faces of maximal cones), keyed canonically."""
        out: dict[tuple, Cone] = {}
        for c in self.maximal:
            for f in c.faces():
                out.setdefault(f._key(), f)
        return out

    def contains_point(self, point: Sequence[int]) -> bool:
        return any(c.contains(point) for c in self.maximal)

    def has_cone(self, cone: Cone) -> bool:
        """Exact membership of a cone in this fan."""
        for c in self.maximal:
            if cone.is_face_of(c):
                return True
        return False

    def carrier(self, point: Sequence[int]) -> Optional[Cone]:
        """The unique cone containing the point in its relative interior."""
        best: Optional[Cone] = None
        for c in self.maximal:
            if not c.contains(point):
                continue
            tight = [a for a in c.facets if _dot(a, point) == 0]
            face = c.face_cut_by(tight) if tight else c
            if best is None or face.dim < best.dim:
                best = face
        if best is not None and not best.contains(point, "relative_interior"):
            raise AssertionError("carrier computation failed the relint check")
        return best

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return self.ambient == other.ambient and sorted(
            c._key() for c in self.maximal
        ) == sorted(c._key() for c in other.maximal)

    def __hash__(self) -> int:
        return hash((self.ambient, tuple(sorted(c._key() for c in self.maximal))))


def fan_from_maximal(cones: Iterable[Cone], validate: bool = True) -> Fan:
    """Assemble a fan from a collection of cones.

    Cones that are faces of others in the collection are pruned; the common
    face axiom is checked pairwise on the rest and a violation raises
    :class:`FanAxiomViolation` carrying the offending pair.
    """
    cone_list = list(cones)
    if not cone_list:
        raise ValueError("empty cone collection")
    ambient = cone_list[0].ambient
    if any(c.ambient != ambient for c in cone_list):
        raise ValueError("mixed ambient dimensions")
    uniq: dict[tuple, Cone] = {}
    for c in cone_list:
        uniq.setdefault(c._key(), c)
    cone_list = list(uniq.values())
    keep = []
    for c in cone_list:
        redundant = False
        for d in cone_list:
            if d is c or not d.contains_cone(c):
                continue
            if not c.is_face_of(d):
                raise FanAxiomViolation(
                    "cone contained in another without being a face",
                    offending=(c, d),
                )
            redundant = True
        if not redundant:
            keep.append(c)
    if validate:
        for i, c1 in enumerate(keep):
            for c2 in keep[i + 1 :]:
                if not _pair_has_common_face(c1, c2):
                    raise FanAxiomViolation(
                        "pairwise intersection is not a common face",
                        offending=(c1, c2),
                    )
    ordered = tuple(sorted(keep, key=lambda c: (c.rays, c.lineality, c.facets)))
    return Fan(ambient, ordered)


def is_subfan(f1: Fan, f2: Fan) -> bool:
    """True iff every cone of f1 (including all faces) is a cone of f2."""
    if f1.ambient != f2.ambient:
        raise ValueError("ambient dimension mismatch")
    return all(f2.has_cone(c) for c in f1.maximal)


# ---------------------------------------------------------------------------
# stellar subdivision
# ---------------------------------------------------------------------------


def _simplicial_coordinates(cone: Cone, point: IVec) -> list[Fraction]:
    mat = QMatrix.from_rows(list(cone.rays)).transpose()
    x = solve(mat, QVector(point))
    if x is None:
        raise ValueError("point outside the span of the cone")
    return list(x.entries)


def stellar_subdivide(fan: Fan, ray: Sequence[int]) -> Fan:
    """Stellar subdivision of a simplicial fan at a ray inside its support."""
    if not fan.is_simplicial:
        raise ValueError("stellar subdivision requires a simplicial fan")
    nu = _prim(tuple(int(x) for x in ray))
    if not any(nu):
        raise ValueError("zero ray")
    holders = [c for c in fan.maximal if c.contains(nu)]
    if not holders:
        raise ValueError("ray lies outside the support of the fan")
    coords = _simplicial_coordinates(holders[0], nu)
    carrier_rays = frozenset(
        r for r, t in zip(holders[0].rays, coords) if t > 0
    )
    new_max: list[Cone] = []
    for c in fan.maximal:
        if carrier_rays <= set(c.rays):
            for dropped in sorted(carrier_rays):
                gens = [r for r in c.rays if r != dropped] + [nu]
                new_max.append(Cone.from_generators(gens, fan.ambient))
        else:
            new_max.append(c)
    return fan_from_maximal(new_max)


def iterated_stellar(fan: Fan, rays: Iterable[Sequence[int]]) -> Fan:
    for r in rays:
        fan = stellar_subdivide(fan, r)
    return fan


def refinement_preserves_support(original: Fan, refined: Fan) -> bool:
    """Support equality for a refinement, by exact containment one way and
    relint representatives of all refined pieces the other way."""
    for c in refined.maximal:
        if not any(d.contains_cone(c) for d in original.maximal):
            return False
    for c in original.maximal:
        for f in c.faces():
            if not f.is_zero() and not refined.contains_point(f.relint_point()):
                return False
    return True


# ---------------------------------------------------------------------------
# arrangement sweeps (sign-vector region and face enumeration)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArrangementLeaf:
    signs: tuple[int, ...]
    rays: tuple[IVec, ...]
    lineality: tuple[IVec, ...]

    def representative(self) -> IVec:
        dim = len(self.rays[0]) if self.rays else (len(self.lineality[0]) if self.lineality else 0)
        pt = [0] * dim
        for r in self.rays:
            for i, x in enumerate(r):
                pt[i] += x
        return tuple(pt)


def _not_flattened(state: _DDState, wall: IVec, sign: int) -> bool:
    """True when the state cone is not contained in the wall it must be strict on."""
    if any(_dot(wall, l) != 0 for l in state.lin):
        return True
    if sign > 0:
        return any(_dot(wall, r) > 0 for r in state.rays)
    return any(_dot(wall, r) < 0 for r in state.rays)


def arrangement_leaves(
    ambient: int,
    base_ineqs: Sequence[IVec],
    walls: Sequence[IVec],
    *,
    base_eqs: Sequence[IVec] = (),
    with_boundaries: bool = False,
) -> list[ArrangementLeaf]:
    """Enumerate sign classes of a wall arrangement inside a base cone.

    With ``with_boundaries`` false only full-dimensional closed regions are
    returned (signs in {+1,-1}); with it true every realised face is returned
    (signs in {+1,0,-1}), where realised means the closed class is not stuck
    inside a wall carrying a strict sign.
    """
    root = _DDState(ambient)
    for e in base_eqs:
        root.insert_equation(e)
    for a in base_ineqs:
        root.insert(a)
    target_dim = root.cone_dim()
    leaves: list[ArrangementLeaf] = []

    def emit(state: _DDState, signs: tuple[int, ...]) -> None:
        if with_boundaries:
            # a later wall can flatten an earlier strict sign: re-check all
            for j, s in enumerate(signs):
                if s != 0 and not _not_flattened(state, walls[j], s):
                    return
        leaves.append(
            ArrangementLeaf(signs, tuple(state.rays), tuple(state.lin))
        )

    def recurse(state: _DDState, depth: int, signs: tuple[int, ...]) -> None:
        if depth == len(walls):
            emit(state, signs)
            return
        w = walls[depth]
        for sign in (1, -1):
            child = state.copy()
            child.insert(w if sign > 0 else _neg(w))
            if with_boundaries:
                if _not_flattened(child, w, sign):
                    recurse(child, depth + 1, signs + (sign,))
            else:
                if child.cone_dim() == target_dim:
                    recurse(child, depth + 1, signs + (sign,))
        if with_boundaries:
            child = state.copy()
            child.insert_equation(w)
            if child.cone_dim() >= 0:
                recurse(child, depth + 1, signs + (0,))

    recurse(root, 0, ())
    return leaves
