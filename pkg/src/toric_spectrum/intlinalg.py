"""Exact integer/rational linear algebra on row lattices.

All values are plain tuples of Python ints (arbitrary precision) or
``fractions.Fraction``; no floating point enters any computation in this
module.  Lattices are kept in row-style Hermite normal form with positive
pivots and entries above each pivot reduced into ``[0, pivot)``, which makes
the basis a canonical form: two generating sets span the same lattice exactly
when their normal forms are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

IntVector = tuple[int, ...]
RationalVector = tuple[Fraction, ...]


def dot(u: Sequence, v: Sequence):
    """Inner product; exact for ints and Fractions."""
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u: Sequence, v: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Sequence) -> tuple:
    return tuple(c * a for a in u)


def vec_neg(u: Sequence) -> tuple:
    return tuple(-a for a in u)


def is_zero_vector(u: Sequence) -> bool:
    return all(a == 0 for a in u)


def primitive_vector(vec: Sequence) -> IntVector:
    """Scale a rational vector to the primitive integer vector with the same
    direction (gcd of entries 1, orientation preserved).  Zero stays zero."""
    fracs = [Fraction(a) for a in vec]
    if all(f == 0 for f in fracs):
        return tuple(0 for _ in fracs)
    denom = 1
    for f in fracs:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in fracs]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return tuple(a // g for a in ints)


def _check_rows(rows: Sequence[Sequence[int]], ambient_rank: Optional[int]) -> int:
    lengths = {len(r) for r in rows}
    if ambient_rank is not None:
        lengths.add(ambient_rank)
    if len(lengths) > 1:
        raise ValueError(f"mismatched row lengths: {sorted(lengths)}")
    if not lengths:
        raise ValueError("ambient rank unknown: no rows and no explicit rank")
    return lengths.pop()


def hnf_rows(rows: Iterable[Sequence[int]], ambient_rank: Optional[int] = None) -> list[IntVector]:
    """Row-style Hermite normal form of the integer row span.

    Returns the canonical basis: linearly independent rows, pivots positive
    and in strictly increasing column order, entries above each pivot reduced
    into ``[0, pivot)``.  Zero rows are dropped.
    """
    rows = [tuple(int(a) for a in r) for r in rows]
    n = _check_rows(rows, ambient_rank)
    mat = [list(r) for r in rows]
    r = 0
    for j in range(n):
        while True:
            nz = [i for i in range(r, len(mat)) if mat[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(mat[i][j]))
            mat[r], mat[i0] = mat[i0], mat[r]
            if len(nz) == 1:
                break
            p = mat[r][j]
            for i in range(r + 1, len(mat)):
                if mat[i][j] != 0:
                    q = mat[i][j] // p
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
        if r < len(mat) and mat[r][j] != 0:
            if mat[r][j] < 0:
                mat[r] = [-a for a in mat[r]]
            p = mat[r][j]
            for i in range(r):
                q = mat[i][j] // p
                if q != 0:
                    mat[i] = [a - q * b for a, b in zip(mat[i], mat[r])]
            r += 1
            if r == len(mat):
                break
    return [tuple(row) for row in mat[:r]]


@dataclass(frozen=True)
class Lattice:
    """Integer row lattice in canonical (HNF) form."""

    ambient_rank: int
    basis: tuple[IntVector, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    def __post_init__(self):
        for row in self.basis:
            if len(row) != self.ambient_rank:
                raise ValueError("basis row length does not match ambient rank")


def hnf(rows: Iterable[Sequence[int]], ambient_rank: Optional[int] = None) -> Lattice:
    """Canonical lattice spanned by the given integer rows."""
    rows = [tuple(int(a) for a in r) for r in rows]
    n = _check_rows(rows, ambient_rank)
    return Lattice(n, tuple(hnf_rows(rows, n)))


def zero_lattice(ambient_rank: int) -> Lattice:
    return Lattice(ambient_rank, ())


def identity_rows(n: int) -> list[IntVector]:
    return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]


def full_lattice(n: int) -> Lattice:
    return Lattice(n, tuple(identity_rows(n)))


def rank_of_rows(rows: Sequence[Sequence]) -> int:
    """Rank over the rationals, by exact Gaussian elimination."""
    work = [[Fraction(a) for a in r] for r in rows if not is_zero_vector(r)]
    rank = 0
    n = len(work[0]) if work else 0
    for j in range(n):
        piv = next((i for i in range(rank, len(work)) if work[i][j] != 0), None)
        if piv is None:
            continue
        work[rank], work[piv] = work[piv], work[rank]
        pivot = work[rank][j]
        for i in range(len(work)):
            if i != rank and work[i][j] != 0:
                f = work[i][j] / pivot
                work[i] = [a - f * b for a, b in zip(work[i], work[rank])]
        rank += 1
        if rank == len(work):
            break
    return rank


def rational_coordinates(basis: Sequence[IntVector], x: Sequence) -> Optional[RationalVector]:
    """Coefficients c with ``sum(c_i * basis_i) == x``, or None if x is not in
    the rational row span.  The basis rows must be linearly independent."""
    k = len(basis)
    if k == 0:
        return () if is_zero_vector(x) else None
    n = len(basis[0])
    # Augment each row with the indicator of its index, then eliminate; the
    # tail columns track the row operations applied.
    work = [[Fraction(a) for a in row] + [Fraction(1 if t == i else 0) for t in range(k)]
            for i, row in enumerate(basis)]
    target = [Fraction(a) for a in x] + [Fraction(0)] * k
    row = 0
    for j in range(n):
        piv = next((i for i in range(row, k) if work[i][j] != 0), None)
        if piv is None:
            continue
        work[row], work[piv] = work[piv], work[row]
        pivot = work[row][j]
        for i in range(k):
            if i != row and work[i][j] != 0:
                f = work[i][j] / pivot
                work[i] = [a - f * b for a, b in zip(work[i], work[row])]
        if target[j] != 0:
            f = target[j] / pivot
            target = [a - f * b for a, b in zip(target, work[row])]
        row += 1
        if row == k:
            break
    for j in range(n):
        if target[j] != 0:
            return None
    return tuple(-target[n + i] for i in range(k))


def lattice_contains(lattice: Lattice, x: Sequence[int]) -> bool:
    """Whether x lies in the integer row span of the lattice basis."""
    if len(x) != lattice.ambient_rank:
        raise ValueError("vector length does not match ambient rank")
    rem = [int(a) for a in x]
    for row in lattice.basis:
        j = next(i for i, a in enumerate(row) if a != 0)
        if rem[j] % row[j] != 0:
            return False
        q = rem[j] // row[j]
        if q != 0:
            rem = [a - q * b for a, b in zip(rem, row)]
    return all(a == 0 for a in rem)


def _smith_diagonal(rows: Sequence[IntVector], transform: bool = False):
    """Nonzero Smith diagonal entries (divisibility order) of the row matrix.

    With ``transform=True`` also returns the right transform T (n x n,
    unimodular) such that row-space(rows) expressed in coordinates w = x @ T
    becomes d_1 Z x ... x d_k Z x 0.
    """
    mat = [list(r) for r in rows]
    m = len(mat)
    n = len(mat[0]) if mat else 0
    T = [list(r) for r in identity_rows(n)] if transform else None
    diag: list[int] = []
    t = 0
    while t < m and t < n:
        pos = None
        for i in range(t, m):
            for j in range(t, n):
                v = mat[i][j]
                if v != 0 and (pos is None or abs(v) < abs(mat[pos[0]][pos[1]])):
                    pos = (i, j)
        if pos is None:
            break
        i0, j0 = pos
        mat[t], mat[i0] = mat[i0], mat[t]
        if j0 != t:
            for row in mat:
                row[t], row[j0] = row[j0], row[t]
            if transform:
                for row in T:
                    row[t], row[j0] = row[j0], row[t]
        p = mat[t][t]
        clean = True
        for i in range(t + 1, m):
            if mat[i][t] != 0:
                q = mat[i][t] // p
                mat[i] = [a - q * b for a, b in zip(mat[i], mat[t])]
                if mat[i][t] != 0:
                    clean = False
        for j in range(t + 1, n):
            if mat[t][j] != 0:
                q = mat[t][j] // p
                for row in mat:
                    row[j] -= q * row[t]
                if transform:
                    for row in T:
                        row[j] -= q * row[t]
                if mat[t][j] != 0:
                    clean = False
        if not clean:
            continue
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if mat[i][j] % p != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            mat[t] = [a + b for a, b in zip(mat[t], mat[bad])]
            continue
        diag.append(abs(p))
        t += 1
    if transform:
        return diag, [tuple(row) for row in T]
    return diag


def quotient_invariants(ambient_rank: int, lattice: Lattice) -> tuple[int, tuple[int, ...]]:
    """Structure of Z^n / lattice: free rank plus invariant torsion factors.

    Factors equal to 1 are dropped; the rest are returned in divisibility
    order (each divides the next).
    """
    if lattice.ambient_rank != ambient_rank:
        raise ValueError("lattice ambient rank mismatch")
    if not lattice.basis:
        return ambient_rank, ()
    diag = _smith_diagonal(lattice.basis)
    free = ambient_rank - len(diag)
    return free, tuple(d for d in diag if d > 1)


def quotient_map(ambient_rank: int, lattice: Lattice):
    """Explicit coordinates for Z^n / lattice.

    Returns ``(torsion_moduli, project)`` where ``project(x)`` gives
    ``(torsion_tuple, free_tuple)``; two vectors are congruent modulo the
    lattice exactly when their projections agree.
    """
    if not lattice.basis:
        moduli: tuple[int, ...] = ()

        def project_trivial(x: Sequence[int]):
            return (), tuple(int(a) for a in x)

        return moduli, project_trivial
    diag, T = _smith_diagonal(lattice.basis, transform=True)
    k = len(diag)
    moduli = tuple(diag)

    def project(x: Sequence[int]):
        w = [dot(x, tuple(row[j] for row in T)) for j in range(lattice.ambient_rank)]
        torsion = tuple(w[i] % moduli[i] for i in range(k))
        free = tuple(w[k:])
        return torsion, free

    return moduli, project


def int_kernel(rows: Sequence[IntVector], ambient_rank: int) -> Lattice:
    """Canonical basis of ``{x in Z^n : <row, x> = 0 for every row}``.

    The result is automatically saturated.
    """
    rows = [tuple(r) for r in rows]
    n = _check_rows(rows, ambient_rank) if rows else ambient_rank
    m = len(rows)
    # Row-reduce [rows^T | I_n]; rows whose first block vanishes give the kernel.
    aug = [tuple(rows[i][j] for i in range(m)) + tuple(1 if t == j else 0 for t in range(n))
           for j in range(n)]
    reduced = hnf_rows(aug, m + n)
    kernel = [row[m:] for row in reduced if all(a == 0 for a in row[:m])]
    return hnf(kernel, n)


def saturate(lattice: Lattice) -> Lattice:
    """Saturation: (Q-span of the lattice) intersected with Z^n."""
    ker = int_kernel(lattice.basis, lattice.ambient_rank)
    return int_kernel(ker.basis, lattice.ambient_rank)


def saturation_index(ambient_rank: int, lattice: Lattice) -> tuple[Lattice, int]:
    """Saturation of the lattice together with its index in it."""
    if lattice.ambient_rank != ambient_rank:
        raise ValueError("lattice ambient rank mismatch")
    sat = saturate(lattice)
    index = 1
    for d in quotient_invariants(ambient_rank, lattice)[1]:
        index *= d
    return sat, index


def project_off(x: Sequence, rows: Sequence[IntVector]) -> RationalVector:
    """Orthogonal projection of x onto the complement of span(rows).

    The rows must be linearly independent.
    """
    xs = tuple(Fraction(a) for a in x)
    if not rows:
        return xs
    k = len(rows)
    gram = [[Fraction(dot(rows[i], rows[j])) for j in range(k)] for i in range(k)]
    rhs = [Fraction(dot(rows[i], xs)) for i in range(k)]
    coeffs = _solve_square(gram, rhs)
    out = list(xs)
    for c, row in zip(coeffs, rows):
        out = [a - c * b for a, b in zip(out, row)]
    return tuple(out)


def _solve_square(mat: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    k = len(mat)
    work = [mat[i][:] + [rhs[i]] for i in range(k)]
    for col in range(k):
        piv = next(i for i in range(col, k) if work[i][col] != 0)
        work[col], work[piv] = work[piv], work[col]
        pivot = work[col][col]
        for i in range(k):
            if i != col and work[i][col] != 0:
                f = work[i][col] / pivot
                work[i] = [a - f * b for a, b in zip(work[i], work[col])]
    return [work[i][k] / work[i][i] for i in range(k)]


def solve_unit_functional(v: IntVector) -> IntVector:
    """An integer x with <v, x> = 1; v must be primitive and nonzero."""
    g = 0
    coeffs: list[int] = []
    for a in v:
        if g == 0:
            coeffs = [0] * len(coeffs) + [0 if a == 0 else (1 if a > 0 else -1)]
            g = abs(a)
            continue
        # extended gcd of (g, a)
        old_r, r = g, a
        old_s, s = 1, 0
        old_t, t = 0, 1
        while r != 0:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        coeffs = [c * old_s for c in coeffs] + [old_t]
        g = old_r
    if g != 1:
        raise ValueError(f"vector is not primitive: gcd {g}")
    return tuple(coeffs)
