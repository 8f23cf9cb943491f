"""Rational polyhedral cones with exact double description.

A :class:`Cone` stores both representations in canonical form:

* V-side: extreme ``rays`` taken modulo the lineality space (each ray is the
  primitive integer vector on its orthogonal representative) plus the
  ``lineality`` lattice (saturated, HNF rows).
* H-side: facet ``inequalities`` (primitive normals, taken modulo the
  orthogonal complement of the span) plus ``equations`` cutting out the span
  (saturated, HNF rows).

The H-side of a cone is literally the V-side of its dual, so dualising is an
exact involution by construction.  Conversions run the double description
method with integer pivots and a rank-based adjacency test; no floating point
is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .intlinalg import (
    IntVector,
    dot,
    hnf_rows,
    int_kernel,
    is_zero_vector,
    primitive_vector,
    project_off,
    rank_of_rows,
    vec_neg,
    vec_sub,
)


@dataclass(frozen=True)
class Cone:
    ambient_rank: int
    rays: tuple[IntVector, ...]
    inequalities: tuple[IntVector, ...]
    lineality: tuple[IntVector, ...]
    equations: tuple[IntVector, ...]

    def dim(self) -> int:
        return rank_of_rows(list(self.rays) + list(self.lineality)) if (self.rays or self.lineality) else 0

    def contains(self, x: Sequence) -> bool:
        """H-side membership test; exact for int or Fraction entries."""
        if len(x) != self.ambient_rank:
            raise ValueError("point length does not match ambient rank")
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(a, x) >= 0 for a in self.inequalities))

    def relative_interior_contains(self, x: Sequence) -> bool:
        if len(x) != self.ambient_rank:
            raise ValueError("point length does not match ambient rank")
        return (all(dot(e, x) == 0 for e in self.equations)
                and all(dot(a, x) > 0 for a in self.inequalities))

    def interior_point(self) -> IntVector:
        """An integer point in the relative interior (sum of the rays)."""
        out = [0] * self.ambient_rank
        for r in self.rays:
            out = [a + b for a, b in zip(out, r)]
        return tuple(out)


def _dedup_keep_order(vectors):
    seen = set()
    out = []
    for v in vectors:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def _reduce_mod_span(vec: Sequence[int], span_rows: Sequence[IntVector]) -> IntVector:
    """Canonical representative of a direction modulo a subspace: project onto
    the orthogonal complement and rescale to a primitive integer vector."""
    if not span_rows:
        return primitive_vector(vec)
    return primitive_vector(project_off(vec, span_rows))


def _adjacent(p: IntVector, q: IntVector, constraints: list[IntVector],
              ambient_rank: int, lineality_dim: int) -> bool:
    """Rank test: two extreme rays are adjacent iff the constraints tight at
    both span a space of rank n - dim(lineality) - 2."""
    tight = [c for c in constraints if dot(c, p) == 0 and dot(c, q) == 0]
    needed = ambient_rank - lineality_dim - 2
    if needed < 0:
        return True
    if not tight:
        return needed == 0
    return rank_of_rows(tight) == needed


def _double_description(inequalities: Sequence[IntVector], equations: Sequence[IntVector],
                        ambient_rank: int):
    """Extreme rays and lineality basis of
    ``{x : <a, x> >= 0 for a in inequalities, <e, x> = 0 for e in equations}``.

    Incremental DD: lineality starts as the full space and shrinks; rays are
    kept canonical modulo the current lineality.
    """
    n = ambient_rank
    todo: list[IntVector] = []
    for e in equations:
        e = tuple(int(a) for a in e)
        if len(e) != n:
            raise ValueError("equation length does not match ambient rank")
        if not is_zero_vector(e):
            todo.append(e)
            todo.append(vec_neg(e))
    for a in inequalities:
        a = tuple(int(x) for x in a)
        if len(a) != n:
            raise ValueError("inequality length does not match ambient rank")
        if not is_zero_vector(a):
            todo.append(a)

    lin: list[IntVector] = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    rays: list[IntVector] = []
    constraints: list[IntVector] = []

    for a in todo:
        lin_vals = [dot(a, l) for l in lin]
        if any(v != 0 for v in lin_vals):
            j0 = next(i for i, v in enumerate(lin_vals) if v != 0)
            l0 = lin[j0] if lin_vals[j0] > 0 else vec_neg(lin[j0])
            w0 = abs(lin_vals[j0])
            new_lin = []
            for i, l in enumerate(lin):
                if i == j0:
                    continue
                new_lin.append(primitive_vector(vec_sub(tuple(w0 * c for c in l),
                                                        tuple(lin_vals[i] * c for c in l0))))
            lin = new_lin
            new_rays = []
            for r in rays:
                v = dot(a, r)
                new_rays.append(tuple(w0 * c for c in r) if v == 0
                                else vec_sub(tuple(w0 * c for c in r), tuple(v * c for c in l0)))
            new_rays.append(l0)
            rays = _dedup_keep_order(
                rr for rr in (_reduce_mod_span(r, lin) for r in new_rays)
                if not is_zero_vector(rr))
            constraints.append(a)
            continue
        plus = [r for r in rays if dot(a, r) > 0]
        zero = [r for r in rays if dot(a, r) == 0]
        minus = [r for r in rays if dot(a, r) < 0]
        if minus:
            new_rays = zero + plus
            for p in plus:
                vp = dot(a, p)
                for q in minus:
                    if not _adjacent(p, q, constraints, n, len(lin)):
                        continue
                    vq = dot(a, q)
                    combo = vec_sub(tuple(vp * c for c in q), tuple(vq * c for c in p))
                    combo = _reduce_mod_span(combo, lin)
                    if not is_zero_vector(combo):
                        new_rays.append(combo)
            rays = _dedup_keep_order(new_rays)
        constraints.append(a)

    lin = hnf_rows(lin, n) if lin else []
    return rays, lin


def _canonical_sides(ray_gens: Sequence[IntVector], lin_gens: Sequence[IntVector], n: int):
    """Canonical (rays, lineality) from arbitrary generating data."""
    if lin_gens:
        # double kernel saturates: span(lin_gens) intersected with Z^n
        lin_rows = int_kernel(int_kernel(lin_gens, n).basis, n).basis
    else:
        lin_rows = ()
    rays = _dedup_keep_order(
        r for r in (_reduce_mod_span(v, lin_rows) for v in ray_gens)
        if not is_zero_vector(r))
    return tuple(sorted(rays)), lin_rows


def cone_from_rays(rays: Sequence[Sequence[int]], lineality: Sequence[Sequence[int]] = (),
                   ambient_rank: Optional[int] = None) -> Cone:
    """Cone generated by the given rays plus a lineality space.

    The input may be redundant; the stored data is canonical.
    """
    n = _infer_rank(rays, lineality, ambient_rank)
    gens = [tuple(int(a) for a in r) for r in rays]
    lins = [tuple(int(a) for a in l) for l in lineality]
    normals, eqs = _double_description(gens, lins, n)
    normals_c, eqs_c = _canonical_sides(normals, eqs, n)
    rays_v, lin_v = _double_description(normals_c, eqs_c, n)
    rays_c, lin_c = _canonical_sides(rays_v, lin_v, n)
    return Cone(n, rays_c, normals_c, lin_c, eqs_c)


def cone_from_inequalities(inequalities: Sequence[Sequence[int]],
                           equations: Sequence[Sequence[int]] = (),
                           ambient_rank: Optional[int] = None) -> Cone:
    """Solution cone of ``<a, x> >= 0`` and ``<e, x> = 0`` constraints."""
    n = _infer_rank(inequalities, equations, ambient_rank)
    ineqs = [tuple(int(a) for a in r) for r in inequalities]
    eqns = [tuple(int(a) for a in r) for r in equations]
    rays_v, lin_v = _double_description(ineqs, eqns, n)
    rays_c, lin_c = _canonical_sides(rays_v, lin_v, n)
    normals, eqs = _double_description(rays_c, lin_c, n)
    normals_c, eqs_c = _canonical_sides(normals, eqs, n)
    return Cone(n, rays_c, normals_c, lin_c, eqs_c)


def _infer_rank(primary, secondary, ambient_rank: Optional[int]) -> int:
    lengths = {len(v) for v in primary} | {len(v) for v in secondary}
    if ambient_rank is not None:
        lengths.add(ambient_rank)
    if len(lengths) > 1:
        raise ValueError(f"mismatched vector lengths: {sorted(lengths)}")
    if not lengths:
        raise ValueError("ambient rank unknown: pass ambient_rank for empty input")
    return lengths.pop()


def dual_cone(cone: Cone) -> Cone:
    """Dual cone ``{y : <x, y> >= 0 for all x in C}``.

    The stored sides swap, so ``dual_cone(dual_cone(C)) == C`` exactly.
    """
    return Cone(cone.ambient_rank, cone.inequalities, cone.rays,
                cone.equations, cone.lineality)


def is_pointed(cone: Cone) -> bool:
    return not cone.lineality


def full_cone(n: int) -> Cone:
    return cone_from_inequalities([], [], ambient_rank=n)


def zero_cone(n: int) -> Cone:
    return cone_from_rays([], [], ambient_rank=n)


def cone_contains_cone(inner: Cone, outer: Cone) -> bool:
    """Exact set containment ``inner <= outer``."""
    if inner.ambient_rank != outer.ambient_rank:
        raise ValueError("ambient rank mismatch")
    for r in inner.rays:
        if not outer.contains(r):
            return False
    for l in inner.lineality:
        if not (outer.contains(l) and outer.contains(vec_neg(l))):
            return False
    return True


@dataclass(frozen=True)
class FaceHandle:
    id: int
    tight_set: tuple[int, ...]
    dim: int


@dataclass(frozen=True)
class FaceLattice:
    cone: Cone
    faces: tuple[FaceHandle, ...]
    covers: tuple[tuple[int, int], ...]
    ray_sets: tuple[tuple[int, ...], ...]

    def face_cone(self, face_id: int) -> Cone:
        rays = [self.cone.rays[i] for i in self.ray_sets[face_id]]
        return cone_from_rays(rays, self.cone.lineality, self.cone.ambient_rank)

    def by_tight_set(self, tight: tuple[int, ...]) -> FaceHandle:
        for f in self.faces:
            if f.tight_set == tight:
                return f
        raise KeyError(f"no face with tight set {tight}")


@lru_cache(maxsize=None)
def face_lattice(cone: Cone) -> FaceLattice:
    """All closed faces of the cone with their Hasse cover relations.

    Faces are the intersection closure of the facet-tight ray sets; the
    minimal face is the lineality space, the maximal face the cone itself.
    """
    m = len(cone.rays)
    ray_sets = {frozenset(range(m))}
    for a in cone.inequalities:
        ray_sets.add(frozenset(j for j in range(m) if dot(a, cone.rays[j]) == 0))
    changed = True
    while changed:
        changed = False
        current = list(ray_sets)
        for i in range(len(current)):
            for j in range(i + 1, len(current)):
                meet = current[i] & current[j]
                if meet not in ray_sets:
                    ray_sets.add(meet)
                    changed = True

    def tight_of(rs: frozenset) -> tuple[int, ...]:
        return tuple(i for i, a in enumerate(cone.inequalities)
                     if all(dot(a, cone.rays[j]) == 0 for j in rs))

    def dim_of(rs: frozenset) -> int:
        rows = [cone.rays[j] for j in rs] + list(cone.lineality)
        return rank_of_rows(rows) if rows else 0

    entries = sorted(((dim_of(rs), tight_of(rs), rs) for rs in ray_sets),
                     key=lambda t: (-t[0], t[1]))
    handles = tuple(FaceHandle(i, tight, d) for i, (d, tight, _) in enumerate(entries))
    sets = [entry[2] for entry in entries]
    less = [[i != j and sets[i] < sets[j] for j in range(len(sets))] for i in range(len(sets))]
    covers = []
    for i in range(len(sets)):
        for j in range(len(sets)):
            if less[i][j] and not any(less[i][k] and less[k][j] for k in range(len(sets))):
                covers.append((j, i))  # larger face covers smaller
    covers.sort()
    return FaceLattice(cone, handles, tuple(covers),
                       tuple(tuple(sorted(rs)) for rs in sets))


def minimal_face_of_point(cone: Cone, x: Sequence) -> FaceHandle:
    """The face having x in its relative interior; x must lie in the cone."""
    if not cone.contains(x):
        raise ValueError(f"point {tuple(x)} is not in the cone")
    tight = {i for i, a in enumerate(cone.inequalities) if dot(a, x) == 0}
    lattice = face_lattice(cone)
    member_rays = tuple(sorted(
        j for j in range(len(cone.rays))
        if all(dot(cone.inequalities[i], cone.rays[j]) == 0 for i in tight)))
    for handle, rs in zip(lattice.faces, lattice.ray_sets):
        if rs == member_rays:
            return handle
    raise AssertionError("tight set does not define a face")  # pragma: no cover
