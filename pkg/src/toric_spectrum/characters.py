"""Characters of a semigroup: the operational model of its spectrum.

A character is a semigroup homomorphism into the closed unit disc.  Every
character is parametrised by a face of the atlas plus two rational vectors on
the face lattice basis: ``theta`` (angles, mod 1) gives the unitary part and
``lam`` (nonnegative on the face cone, i.e. a point of the dual cone) gives
the radial decay.  On a face member ``x = sum(c_i b_i)`` the value is

    exp(2 pi i <theta, c>) * exp(-<lam, c>)

and 0 off the face.  Storing data on the face lattice basis makes equality of
characters a plain comparison of canonical triples.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from math import exp, pi
from typing import Optional, Sequence

from .intlinalg import IntVector, dot, rational_coordinates
from .semigroups import SpectrumAtlas, contains


@dataclass(frozen=True)
class Character:
    face_id: int
    theta: tuple[Fraction, ...]
    lam: tuple[Fraction, ...]


@dataclass(frozen=True)
class ExactValue:
    """A point of the closed unit disc in exact polar form:
    ``exp(2 pi i angle) * exp(-exponent)``, or zero."""

    zero: bool
    angle: Optional[Fraction] = None
    exponent: Optional[Fraction] = None

    def to_complex(self) -> complex:
        if self.zero:
            return 0j
        return cmath.rect(exp(-float(self.exponent)), 2.0 * pi * float(self.angle))


ZERO_VALUE = ExactValue(True)


def multiply_values(a: ExactValue, b: ExactValue) -> ExactValue:
    if a.zero or b.zero:
        return ZERO_VALUE
    return ExactValue(False, (a.angle + b.angle) % 1, a.exponent + b.exponent)


@dataclass(frozen=True)
class Ray:
    """One parameter semigroup of characters ``t -> exp(-t lam)`` based at a
    face idempotent; ``lam`` lives in the dual cone of the base face."""

    base_face_id: int
    lam: tuple[Fraction, ...]


def make_character(atlas: SpectrumAtlas, face_id: int,
                   theta: Sequence, lam: Sequence) -> Character:
    """Validate and canonicalise character data against the atlas."""
    if not 0 <= face_id < len(atlas.faces):
        raise ValueError(f"unknown face {face_id}")
    face = atlas.faces[face_id]
    theta = tuple(Fraction(t) % 1 for t in theta)
    lam = tuple(Fraction(v) for v in lam)
    if len(theta) != face.rank or len(lam) != face.rank:
        raise ValueError(
            f"face {face_id} has lattice rank {face.rank}, got theta/lambda of "
            f"lengths {len(theta)}/{len(lam)}")
    if not face.dual_cone_local.contains(lam):
        raise ValueError(f"lambda {lam} is not in the dual cone of face {face_id}")
    return Character(face_id, theta, lam)


def idempotent(atlas: SpectrumAtlas, face_id: int) -> Character:
    """The characteristic function of a face: 1 on it, 0 elsewhere."""
    if not 0 <= face_id < len(atlas.faces):
        raise ValueError(f"unknown face {face_id}")
    rank = atlas.faces[face_id].rank
    zero = tuple(Fraction(0) for _ in range(rank))
    return Character(face_id, zero, zero)


def identity_character(atlas: SpectrumAtlas) -> Character:
    return idempotent(atlas, atlas.top_id)


def zero_character(atlas: SpectrumAtlas) -> Optional[Character]:
    """The absorbing character, which exists iff the least face is trivial."""
    j = atlas.minimal_id
    if atlas.faces[j].rank != 0:
        return None
    return idempotent(atlas, j)


def _face_coordinates(atlas: SpectrumAtlas, face_id: int, x: IntVector) -> tuple[int, ...]:
    face = atlas.faces[face_id]
    coords = rational_coordinates(face.lattice.basis, x)
    assert coords is not None and all(c.denominator == 1 for c in coords), \
        "face member must lie in the face lattice"
    return tuple(int(c) for c in coords)


def evaluate(atlas: SpectrumAtlas, chi: Character, x: Sequence[int]) -> ExactValue:
    """Value of the character at a semigroup member.

    Zero off the face; on the face the angle is ``<theta, c> mod 1`` and the
    exponent ``<lam, c>`` where c are the coordinates of x on the face
    lattice basis.
    """
    x = tuple(int(a) for a in x)
    if not contains(atlas.spec, x):
        raise ValueError(f"{x} is not a member of the semigroup")
    face = atlas.faces[chi.face_id]
    if not face.cone.contains(x):
        return ZERO_VALUE
    coords = _face_coordinates(atlas, chi.face_id, x)
    angle = sum((t * c for t, c in zip(chi.theta, coords)), Fraction(0)) % 1
    exponent = sum((v * c for v, c in zip(chi.lam, coords)), Fraction(0))
    assert exponent >= 0, "dual cone constraint keeps the modulus inside the disc"
    return ExactValue(False, angle, exponent)


def _restriction_matrix(atlas: SpectrumAtlas, sub_face: int, face: int) -> list[tuple[int, ...]]:
    """Rows expressing the sub-face lattice basis on the parent face basis.

    Integrality is guaranteed by the nesting of face lattices and asserted.
    """
    sub = atlas.faces[sub_face]
    parent = atlas.faces[face]
    rows = []
    for b in sub.lattice.basis:
        coords = rational_coordinates(parent.lattice.basis, b)
        assert coords is not None and all(c.denominator == 1 for c in coords), \
            "face lattices must be nested"
        rows.append(tuple(int(c) for c in coords))
    return rows


def _restrict(vec: Sequence[Fraction], matrix: list[tuple[int, ...]]) -> tuple[Fraction, ...]:
    return tuple(sum((Fraction(m) * v for m, v in zip(row, vec)), Fraction(0))
                 for row in matrix)


def multiply(atlas: SpectrumAtlas, a: Character, b: Character) -> Character:
    """Pointwise product of characters.

    The product lives on the meet of the two faces; both data vectors are
    added and restricted to the meet lattice.
    """
    meet = atlas.meet(a.face_id, b.face_id)
    ma = _restriction_matrix(atlas, meet, a.face_id)
    mb = _restriction_matrix(atlas, meet, b.face_id)
    theta = tuple((ta + tb) % 1 for ta, tb in zip(_restrict(a.theta, ma),
                                                  _restrict(b.theta, mb)))
    lam = tuple(la + lb for la, lb in zip(_restrict(a.lam, ma), _restrict(b.lam, mb)))
    assert atlas.faces[meet].dual_cone_local.contains(lam)
    return Character(meet, theta, lam)


def involute(atlas: SpectrumAtlas, chi: Character) -> Character:
    """Complex conjugation: negate the angles, keep the decay."""
    return Character(chi.face_id, tuple((-t) % 1 for t in chi.theta), chi.lam)


def polar_decompose(atlas: SpectrumAtlas, chi: Character) -> tuple[Character, Character]:
    """Split into a unitary part (angles only) and the unique nonnegative
    radial part (decay only) on the same face."""
    rank = atlas.faces[chi.face_id].rank
    zero = tuple(Fraction(0) for _ in range(rank))
    return (Character(chi.face_id, chi.theta, zero),
            Character(chi.face_id, zero, chi.lam))


def ray_point(atlas: SpectrumAtlas, ray: Ray, t) -> Character:
    """The character ``exp(-t lam)`` on the base face; t >= 0."""
    t = Fraction(t)
    if t < 0:
        raise ValueError("ray parameter must be nonnegative")
    face = atlas.faces[ray.base_face_id]
    lam = tuple(Fraction(v) for v in ray.lam)
    if not face.dual_cone_local.contains(lam):
        raise ValueError("ray data must lie in the dual cone of its base face")
    zero = tuple(Fraction(0) for _ in range(face.rank))
    return Character(ray.base_face_id, zero, tuple(t * v for v in lam))


def ray_limit(atlas: SpectrumAtlas, ray: Ray) -> int:
    """Face of the limit idempotent of the ray: the largest face below the
    base on whose cone the decay functional vanishes."""
    base = atlas.faces[ray.base_face_id]
    lam = tuple(Fraction(v) for v in ray.lam)
    if not base.dual_cone_local.contains(lam):
        raise ValueError("ray data must lie in the dual cone of its base face")
    candidates = []
    for face in atlas.faces:
        if not atlas.leq(face.face_id, ray.base_face_id):
            continue
        if _vanishes_on_face(atlas, lam, ray.base_face_id, face.face_id):
            candidates.append(face.face_id)
    best = [j for j in candidates if all(atlas.leq(k, j) for k in candidates)]
    assert len(best) == 1, "limit face is not unique"
    return best[0]


def _vanishes_on_face(atlas: SpectrumAtlas, lam: tuple[Fraction, ...],
                      base_id: int, face_id: int) -> bool:
    base = atlas.faces[base_id]
    cone = atlas.faces[face_id].cone
    for v in list(cone.rays) + list(cone.lineality):
        coords = rational_coordinates(base.lattice.basis, v)
        assert coords is not None
        if dot(lam, coords) != 0:
            return False
    return True


def idempotent_lattice_ops(atlas: SpectrumAtlas, face_ids: Sequence[int]) -> tuple[int, int]:
    """Meet and join of a nonempty set of idempotents, as face ids."""
    ids = list(face_ids)
    if not ids:
        raise ValueError("need at least one face id")
    inf = ids[0]
    sup = ids[0]
    for j in ids[1:]:
        inf = atlas.meet(inf, j)
        sup = atlas.join(sup, j)
    return inf, sup


def chain_of_rays(atlas: SpectrumAtlas, from_face: int, to_face: int) -> list[Ray]:
    """A chain of rays descending from one idempotent to a smaller one.

    Each step drops to a maximal intermediate face; the decay functional is
    the sum of the facet normals of the current face cone that vanish on the
    target, which lands exactly on it.  The chain length never exceeds the
    lattice rank difference.
    """
    if not atlas.leq(to_face, from_face):
        raise ValueError(f"face {to_face} is not below face {from_face}")
    chain: list[Ray] = []
    current = from_face
    while current != to_face:
        below = [j for j in range(len(atlas.faces))
                 if atlas.leq(to_face, j) and atlas.leq(j, current) and j != current]
        step = [j for j in below
                if not any(k != j and atlas.leq(j, k) for k in below)]
        target = min(step)
        face = atlas.faces[current]
        normals = [a for a in face.cone_local.inequalities
                   if _local_normal_vanishes(atlas, a, current, target)]
        assert normals, "a strictly smaller face lies on at least one facet"
        lam = tuple(sum(Fraction(a[i]) for a in normals)
                    for i in range(face.rank))
        ray = Ray(current, lam)
        landed = ray_limit(atlas, ray)
        assert landed == target and atlas.faces[landed].rank < face.rank
        chain.append(ray)
        current = landed
    return chain


def _local_normal_vanishes(atlas: SpectrumAtlas, normal: IntVector,
                           base_id: int, face_id: int) -> bool:
    return _vanishes_on_face(atlas, tuple(Fraction(a) for a in normal),
                             base_id, face_id)


def classify(atlas: SpectrumAtlas, chi: Character) -> dict:
    """Structural flags of a character.

    ``full_support`` (top face) is computed twice: from the face id and from
    nonvanishing at an interior member; the two answers are asserted equal.
    """
    is_idempotent = all(t == 0 for t in chi.theta) and all(v == 0 for v in chi.lam)
    is_symmetric = all(t == 0 or t == Fraction(1, 2) for t in chi.theta)
    is_nonnegative = all(t == 0 for t in chi.theta)
    by_face = chi.face_id == atlas.top_id
    by_value = not evaluate(atlas, chi, atlas.interior_member).zero
    assert by_face == by_value, "openness test disagrees with the face test"
    return {
        "is_idempotent": is_idempotent,
        "is_symmetric": is_symmetric,
        "is_nonnegative": is_nonnegative,
        "full_support": by_face,
    }
