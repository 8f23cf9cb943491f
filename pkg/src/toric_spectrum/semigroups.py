"""Finitely described semigroups in Z^n and their face atlases.

Two descriptions are supported:

* :class:`Generators` - the semigroup of all nonnegative integer combinations
  of a finite generator list (the zero vector always belongs).
* :class:`Tower` - an open half lattice plus a recursively described
  semigroup on its boundary hyperplane:
  ``S = {x : <normal, x> > 0}  union  embed(inner)`` where the boundary
  lattice ``normal^perp intersect Z^n`` carries its canonical HNF basis and
  ``inner`` is a spec of rank ``n - 1`` written in those coordinates.

The atlas lists every face (a subsemigroup whose complement is an ideal)
together with its asymptotic cone, the subgroup of Z^n generated by its
points, the torsion of the ambient quotient, and the dual cone written in
face-lattice coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Optional, Sequence, Union

from .cones import (
    Cone,
    cone_contains_cone,
    cone_from_inequalities,
    cone_from_rays,
    dual_cone,
    face_lattice,
    is_pointed,
)
from .intlinalg import (
    IntVector,
    Lattice,
    dot,
    hnf,
    int_kernel,
    is_zero_vector,
    lattice_contains,
    primitive_vector,
    quotient_invariants,
    quotient_map,
    rational_coordinates,
    solve_unit_functional,
    vec_add,
    vec_neg,
)


class MembershipUndecided(Exception):
    """Raised when an explicit search budget runs out before the membership
    question is settled.  Never silently reported as False."""


@dataclass(frozen=True)
class Generators:
    ambient_rank: int
    generators: tuple[IntVector, ...]

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.ambient_rank:
                raise ValueError("generator length does not match ambient rank")


@dataclass(frozen=True)
class Tower:
    ambient_rank: int
    normal: IntVector
    inner: "SemigroupSpec"

    def __post_init__(self):
        if len(self.normal) != self.ambient_rank:
            raise ValueError("normal length does not match ambient rank")
        if is_zero_vector(self.normal):
            raise ValueError("tower normal must be nonzero")
        if primitive_vector(self.normal) != self.normal:
            raise ValueError("tower normal must be primitive")
        if self.inner.ambient_rank != self.ambient_rank - 1:
            raise ValueError("inner spec must have ambient rank n - 1")


SemigroupSpec = Union[Generators, Tower]


def boundary_basis(spec: Tower) -> tuple[IntVector, ...]:
    """Canonical HNF basis of ``normal^perp intersect Z^n``; the inner spec
    coordinates refer to these rows."""
    return int_kernel([spec.normal], spec.ambient_rank).basis


def embed_point(basis: Sequence[IntVector], y: Sequence[int]) -> IntVector:
    out = [0] * (len(basis[0]) if basis else 0)
    for c, row in zip(y, basis):
        out = [a + c * b for a, b in zip(out, row)]
    return tuple(out)


def asymptotic_cone(spec: SemigroupSpec) -> Cone:
    """Closed cone of all limit directions of the semigroup.

    Generators case: the cone hull of the generators (which equals the
    double dual of the generating data).  Tower case: the closed half space
    of the defining normal.
    """
    if isinstance(spec, Generators):
        return cone_from_rays(spec.generators, (), spec.ambient_rank)
    return cone_from_inequalities([spec.normal], (), spec.ambient_rank)


def is_antisymmetric(spec: SemigroupSpec) -> bool:
    """Whether ``S intersect (-S) == {0}``.

    For a generated semigroup this is pointedness of the asymptotic cone; a
    tower is antisymmetric iff its boundary semigroup is (the open side never
    meets its own negative).
    """
    if isinstance(spec, Generators):
        return is_pointed(asymptotic_cone(spec))
    return is_antisymmetric(spec.inner)


def is_separating(spec: SemigroupSpec) -> bool:
    """Whether the group generated by S is all of Z^n."""
    if isinstance(spec, Tower):
        return True
    lattice = hnf(spec.generators, spec.ambient_rank)
    free, torsion = quotient_invariants(spec.ambient_rank, lattice)
    return free == 0 and not torsion


# ---------------------------------------------------------------------------
# membership


@lru_cache(maxsize=None)
def _membership_data(spec: Generators):
    """Search data for generator membership.

    The generators lying in the lineality of the asymptotic cone generate a
    subgroup that is split off through quotient coordinates; the remaining
    generators have nonzero image in a pointed cone, which yields per
    generator coefficient bounds via a strictly positive integer functional.
    """
    cone = asymptotic_cone(spec)
    gens = [g for g in dict.fromkeys(spec.generators) if not is_zero_vector(g)]
    in_lin = [g for g in gens if cone.contains(g) and cone.contains(vec_neg(g))]
    rest = [g for g in gens if not (cone.contains(g) and cone.contains(vec_neg(g)))]
    lin_lattice = hnf(in_lin, spec.ambient_rank) if in_lin else Lattice(spec.ambient_rank, ())
    moduli, project = quotient_map(spec.ambient_rank, lin_lattice)
    images = [project(g) for g in rest]
    free_rank = spec.ambient_rank - lin_lattice.rank
    free_cone = cone_from_rays([im[1] for im in images], (), free_rank)
    weight = tuple(sum(col) for col in zip(*free_cone.inequalities)) \
        if free_cone.inequalities else tuple([0] * free_rank)
    order = sorted(range(len(rest)),
                   key=lambda i: (-dot(weight, images[i][1]), rest[i]))
    gen_images = [images[i] for i in order]
    return cone, moduli, project, free_cone, weight, gen_images


def contains(spec: SemigroupSpec, x: Sequence[int], max_nodes: Optional[int] = None) -> bool:
    """Exact membership ``x in S``.

    Always decided exactly; the optional ``max_nodes`` budget turns a
    pathologically large search into an explicit
    :class:`MembershipUndecided` instead of a wrong answer.
    """
    x = tuple(int(a) for a in x)
    if len(x) != spec.ambient_rank:
        raise ValueError("point length does not match ambient rank")
    if isinstance(spec, Tower):
        height = dot(spec.normal, x)
        if height > 0:
            return True
        if height < 0:
            return False
        basis = boundary_basis(spec)
        coords = rational_coordinates(basis, x)
        assert coords is not None and all(c.denominator == 1 for c in coords)
        return contains(spec.inner, tuple(int(c) for c in coords), max_nodes)
    return _generators_contains(spec, x, max_nodes)


def _generators_contains(spec: Generators, x: IntVector, max_nodes: Optional[int]) -> bool:
    if is_zero_vector(x):
        return True
    cone, moduli, project, free_cone, weight, gen_images = _membership_data(spec)
    if not cone.contains(x):
        return False
    torsion_x, free_x = project(x)
    budget = [max_nodes]
    dead: set = set()

    def rec(idx: int, torsion_rem: tuple, free_rem: tuple) -> bool:
        if all(t == 0 for t in torsion_rem) and is_zero_vector(free_rem):
            return True
        if idx == len(gen_images):
            return False
        state = (idx, torsion_rem, free_rem)
        if state in dead:
            return False
        if budget[0] is not None:
            budget[0] -= 1
            if budget[0] < 0:
                raise MembershipUndecided(f"membership search budget exhausted for {x}")
        if not free_cone.contains(free_rem):
            dead.add(state)
            return False
        g_tors, g_free = gen_images[idx]
        w = dot(weight, g_free)
        assert w > 0, "pointed part admits a strictly positive functional"
        cap = dot(weight, free_rem) // w
        for c in range(cap, -1, -1):
            t_rem = tuple((torsion_rem[i] - c * g_tors[i]) % moduli[i]
                          for i in range(len(moduli)))
            f_rem = tuple(a - c * b for a, b in zip(free_rem, g_free))
            if rec(idx + 1, t_rem, f_rem):
                return True
        dead.add(state)
        return False

    return rec(0, torsion_x, free_x)


# ---------------------------------------------------------------------------
# face atlas


@dataclass(frozen=True)
class FaceData:
    face_id: int
    dim: int
    cone: Cone
    lattice: Lattice
    torsion: tuple[int, ...]
    cone_local: Cone
    dual_cone_local: Cone
    member_generators: Optional[tuple[IntVector, ...]]
    tight_set: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.lattice.rank


@dataclass(frozen=True)
class SpectrumAtlas:
    spec: SemigroupSpec
    ambient_cone: Cone
    faces: tuple[FaceData, ...]
    covers: tuple[tuple[int, int], ...]
    antisymmetric: bool
    separating: bool
    interior_member: IntVector
    leq_table: tuple[tuple[bool, ...], ...] = field(repr=False)

    @property
    def top_id(self) -> int:
        return 0

    @property
    def minimal_id(self) -> int:
        for j in range(len(self.faces)):
            if all(self.leq_table[j][k] for k in range(len(self.faces))):
                return j
        raise AssertionError("no least face")  # pragma: no cover

    def leq(self, j: int, k: int) -> bool:
        """Face order: j <= k iff the j-th face is contained in the k-th."""
        return self.leq_table[j][k]

    def meet(self, j: int, k: int) -> int:
        lower = [f for f in range(len(self.faces))
                 if self.leq_table[f][j] and self.leq_table[f][k]]
        tops = [f for f in lower if all(self.leq_table[g][f] for g in lower)]
        assert len(tops) == 1, "face meet is not unique"
        return tops[0]

    def join(self, j: int, k: int) -> int:
        upper = [f for f in range(len(self.faces))
                 if self.leq_table[j][f] and self.leq_table[k][f]]
        bottoms = [f for f in upper if all(self.leq_table[f][g] for g in upper)]
        assert len(bottoms) == 1, "face join is not unique"
        return bottoms[0]

    def face_of_member(self, x: Sequence[int]) -> int:
        """Smallest face whose cone contains the semigroup member x."""
        candidates = [f.face_id for f in self.faces if f.cone.contains(x)]
        best = [j for j in candidates if all(self.leq_table[j][k] for k in candidates)]
        assert len(best) == 1
        return best[0]


def _full_lattice(n: int) -> Lattice:
    return Lattice(n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))


def _generator_raw_faces(spec: Generators):
    """Step-by-step face expansion for a generated semigroup.

    Starting from the full generator set, every closed face of the cone of
    each known face contributes the subset of generators lying on it;
    iteration continues until nothing new appears.  One round suffices here,
    which the test suite asserts separately.
    """
    n = spec.ambient_rank
    gens = tuple(dict.fromkeys(spec.generators))
    found: dict[frozenset, tuple[Cone, tuple[IntVector, ...]]] = {}
    queue = [frozenset(range(len(gens)))]
    while queue:
        key = queue.pop()
        subset = [gens[i] for i in sorted(key)]
        cone = cone_from_rays(subset, (), n)
        if key not in found:
            found[key] = (cone, tuple(subset))
        lattice = face_lattice(cone)
        for handle in lattice.faces:
            tight = [cone.inequalities[i] for i in handle.tight_set]
            members = frozenset(i for i in key
                                if all(dot(a, gens[i]) == 0 for a in tight))
            if members not in found:
                sub = [gens[i] for i in sorted(members)]
                found[members] = (cone_from_rays(sub, (), n), tuple(sub))
                queue.append(members)
    out = []
    for cone, subset in found.values():
        member_input = tuple(g for g in spec.generators if cone.contains(g))
        lattice = hnf(subset, n) if subset else Lattice(n, ())
        out.append((cone, lattice, member_input))
    return out


def _tower_raw_faces(spec: Tower):
    n = spec.ambient_rank
    top_cone = cone_from_inequalities([spec.normal], (), n)
    faces: list[tuple[Cone, Lattice, Optional[tuple[IntVector, ...]]]] = [
        (top_cone, _full_lattice(n), None)]
    basis = boundary_basis(spec)
    for cone_in, lattice_in, members_in in _raw_faces(spec.inner):
        rays = [embed_point(basis, r) for r in cone_in.rays]
        lin = [embed_point(basis, l) for l in cone_in.lineality]
        cone_amb = cone_from_rays(rays, lin, n)
        lattice_amb = hnf([embed_point(basis, b) for b in lattice_in.basis], n) \
            if lattice_in.basis else Lattice(n, ())
        members_amb = tuple(embed_point(basis, g) for g in members_in) \
            if members_in is not None else None
        faces.append((cone_amb, lattice_amb, members_amb))
    return faces


def _raw_faces(spec: SemigroupSpec):
    if isinstance(spec, Generators):
        return _generator_raw_faces(spec)
    return _tower_raw_faces(spec)


def _finalize_face(n: int, cone: Cone, lattice: Lattice):
    torsion = quotient_invariants(n, lattice)[1]
    local_rays = []
    for r in cone.rays:
        coords = rational_coordinates(lattice.basis, r)
        assert coords is not None, "face cone leaves the span of its lattice"
        local_rays.append(primitive_vector(coords))
    local_lin = []
    for l in cone.lineality:
        coords = rational_coordinates(lattice.basis, l)
        assert coords is not None
        local_lin.append(primitive_vector(coords))
    cone_local = cone_from_rays(local_rays, local_lin, lattice.rank)
    return torsion, cone_local, dual_cone(cone_local)


def _interior_member(spec: SemigroupSpec) -> IntVector:
    """A semigroup member in the relative interior of the asymptotic cone."""
    if isinstance(spec, Tower):
        return solve_unit_functional(spec.normal)
    total = tuple([0] * spec.ambient_rank)
    for g in spec.generators:
        total = vec_add(total, g)
    return total


def enumerate_faces(spec: SemigroupSpec) -> SpectrumAtlas:
    """Complete face atlas of the semigroup.

    Faces are exactly the subsemigroups whose complement is an ideal.  For a
    generated semigroup they correspond one-to-one with the closed faces of
    the asymptotic cone; a tower contributes itself plus the embedded faces
    of its boundary semigroup.  Face 0 is the whole semigroup; the rest are
    ordered by decreasing cone dimension, then lexicographic cone data.
    """
    n = spec.ambient_rank
    raw = _raw_faces(spec)
    ambient = asymptotic_cone(spec)
    top_key = max(range(len(raw)), key=lambda i: raw[i][0].dim())
    assert raw[top_key][0] == ambient, "top face cone must be the asymptotic cone"
    rest = sorted((raw[i] for i in range(len(raw)) if i != top_key),
                  key=lambda t: (-t[0].dim(), t[0].rays, t[0].lineality))
    ordered = [raw[top_key]] + rest
    faces = []
    for fid, (cone, lattice, members) in enumerate(ordered):
        torsion, cone_local, dual_local = _finalize_face(n, cone, lattice)
        tight = tuple(i for i, a in enumerate(ambient.inequalities)
                      if all(dot(a, r) == 0 for r in cone.rays)
                      and all(dot(a, l) == 0 for l in cone.lineality))
        faces.append(FaceData(fid, cone.dim(), cone, lattice, torsion,
                              cone_local, dual_local, members, tight))
    m = len(faces)
    leq = tuple(tuple(cone_contains_cone(faces[j].cone, faces[k].cone) for k in range(m))
                for j in range(m))
    covers = []
    for a in range(m):
        for b in range(m):
            if a == b or not leq[b][a] or leq[a][b]:
                continue
            if not any(c not in (a, b) and leq[b][c] and leq[c][a] for c in range(m)):
                covers.append((a, b))
    covers.sort()
    atlas = SpectrumAtlas(spec, ambient, tuple(faces), tuple(covers),
                          is_antisymmetric(spec), is_separating(spec),
                          _interior_member(spec), leq)
    minimal = [j for j in range(m) if all(leq[j][k] for k in range(m))]
    maximal = [j for j in range(m) if all(leq[k][j] for k in range(m))]
    assert len(minimal) == 1 and maximal == [0], "face order is not bounded"
    return atlas


def face_group(atlas: SpectrumAtlas, face_id: int) -> Lattice:
    """Subgroup of Z^n generated by the lattice points on the face."""
    return atlas.faces[face_id].lattice


def dual_face_cone(atlas: SpectrumAtlas, face_id: int) -> Cone:
    """Dual of the face cone, in coordinates of the face lattice basis."""
    return atlas.faces[face_id].dual_cone_local


def hull_contains(atlas: SpectrumAtlas, x: Sequence[int]) -> bool:
    """Membership in the hull, the largest semigroup with the same atlas:
    true iff some face has x in the relative interior of its cone and in its
    lattice."""
    x = tuple(int(a) for a in x)
    return any(face.cone.relative_interior_contains(x)
               and lattice_contains(face.lattice, x)
               for face in atlas.faces)


def zero_face(atlas: SpectrumAtlas) -> Optional[int]:
    """Face whose idempotent is the zero element, if one exists."""
    j = atlas.minimal_id
    return j if atlas.faces[j].rank == 0 else None


def validate_atlas(atlas: SpectrumAtlas) -> list[str]:
    """Check the structural conditions every atlas must satisfy.

    For comparable faces j < k the smaller cone must lie in a proper face of
    the larger cone and the face lattices must be nested; every face cone
    must be generated by its own lattice points.  Returns human readable
    violations (expected: none).
    """
    problems = []
    faces = atlas.faces
    for j in range(len(faces)):
        for k in range(len(faces)):
            if j == k or not atlas.leq(j, k) or atlas.leq(k, j):
                continue
            ck = faces[k].cone
            on_facet = any(all(dot(a, r) == 0 for r in faces[j].cone.rays)
                           and all(dot(a, l) == 0 for l in faces[j].cone.lineality)
                           for a in ck.inequalities)
            if not on_facet:
                problems.append(f"face {j} < face {k} but its cone lies in no proper face")
            for b in faces[j].lattice.basis:
                if not lattice_contains(faces[k].lattice, b):
                    problems.append(
                        f"lattice of face {j} is not contained in lattice of face {k}")
                    break
    for j, face in enumerate(faces):
        for r in face.cone.rays:
            if rational_coordinates(face.lattice.basis, r) is None:
                problems.append(f"face {j}: ray {r} outside the span of its lattice")
        for l in face.cone.lineality:
            if rational_coordinates(face.lattice.basis, l) is None:
                problems.append(f"face {j}: lineality {l} outside the span of its lattice")
    return problems


def members_in_box(spec: SemigroupSpec, radius: int) -> list[IntVector]:
    """All semigroup members with coordinates in [-radius, radius]."""
    return [tuple(raw) for raw in product(range(-radius, radius + 1),
                                          repeat=spec.ambient_rank)
            if contains(spec, raw)]


def face_members_in_box(atlas: SpectrumAtlas, radius: int) -> list[frozenset]:
    """Every face restricted to the box, as point sets (atlas face order)."""
    members = members_in_box(atlas.spec, radius)
    return [frozenset(x for x in members if face.cone.contains(x))
            for face in atlas.faces]
