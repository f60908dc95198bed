"""Exact rational and integer linear algebra on plain tuples.

Vectors are tuples of ``Fraction`` (or ``int``), matrices are tuples of row
tuples.  Everything is immutable and every operation is exact; no floats
appear anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, ...]
IVec = tuple[int, ...]
Mat = tuple[Vec, ...]
IMat = tuple[IVec, ...]


def vec(entries: Iterable) -> Vec:
    return tuple(Fraction(x) for x in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def ivec(entries: Iterable) -> IVec:
    out = []
    for x in entries:
        f = Fraction(x)
        if f.denominator != 1:
            raise ValueError(f"non-integer entry {x}")
        out.append(int(f))
    return tuple(out)


def imat(rows: Iterable[Iterable]) -> IMat:
    return tuple(ivec(r) for r in rows)


def zero_vec(n: int) -> IVec:
    return (0,) * n


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def dot(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise ValueError(f"dimension mismatch {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vadd(u: Sequence, v: Sequence) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vscale(c, v: Sequence) -> Vec:
    return tuple(c * x for x in v)


def vneg(v: Sequence) -> Vec:
    return tuple(-x for x in v)


def mat_vec(M: Sequence[Sequence], x: Sequence) -> Vec:
    return tuple(dot(row, x) for row in M)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> Mat:
    Bt = transpose(B)
    return tuple(tuple(dot(row, col) for col in Bt) for row in A)


def transpose(M: Sequence[Sequence]) -> Mat:
    if not M:
        return ()
    return tuple(zip(*M))


def identity(n: int) -> IMat:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def primitive(v: Sequence) -> IVec:
    """Shortest integer vector on the ray through v; direction is preserved."""
    w = vec(v)
    if is_zero(w):
        raise ValueError("primitive of the zero vector is undefined")
    denom_lcm = 1
    for x in w:
        denom_lcm = denom_lcm * x.denominator // gcd(denom_lcm, x.denominator)
    ints = [int(x * denom_lcm) for x in w]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return tuple(x // g for x in ints)


def rank(M: Sequence[Sequence]) -> int:
    rows = [list(vec(r)) for r in M]
    if not rows:
        return 0
    n = len(rows[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def solve_rational(A: Sequence[Sequence], b: Sequence) -> Optional[Vec]:
    """One rational solution of A x = b, or None if the system is inconsistent."""
    m = len(A)
    if m == 0:
        return ()
    n = len(A[0])
    rows = [list(vec(A[i])) + [Fraction(b[i])] for i in range(m)]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * bb for a, bb in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if rows[i][n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in pivots:
        x[c] = rows[i][n] / rows[i][c]
    return tuple(x)


def nullspace(A: Sequence[Sequence]) -> tuple[Vec, ...]:
    """Rational basis of {x : A x = 0}."""
    m = len(A)
    if m == 0:
        raise ValueError("ambient dimension unknown for an empty matrix")
    n = len(A[0])
    rows = [list(vec(r)) for r in A]
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append((r, c))
        r += 1
        if r == m:
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(n):
        if free in pivot_cols:
            continue
        x = [Fraction(0)] * n
        x[free] = Fraction(1)
        for i, c in pivots:
            x[c] = -rows[i][free] / rows[i][c]
        basis.append(tuple(x))
    return tuple(basis)


def hnf(M: Sequence[Sequence]) -> tuple[IMat, IMat]:
    """Row Hermite normal form of an integer matrix.

    Returns (H, U) with H = U @ M, U unimodular, pivots positive and entries
    above each pivot reduced into [0, pivot).
    """
    H = [list(r) for r in imat(M)]
    m = len(H)
    n = len(H[0]) if m else 0
    U = [list(r) for r in identity(m)]
    r = 0
    for c in range(n):
        # gcd elimination below row r in column c
        while True:
            nz = [i for i in range(r, m) if H[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            if piv != r:
                H[r], H[piv] = H[piv], H[r]
                U[r], U[piv] = U[piv], U[r]
            done = True
            for i in range(r + 1, m):
                if H[i][c] != 0:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
                    if H[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-a for a in H[r]]
                U[r] = [-a for a in U[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[r])]
            r += 1
            if r == m:
                break
    return tuple(tuple(x) for x in H), tuple(tuple(x) for x in U)


def hnf_basis(rows: Sequence[Sequence]) -> IMat:
    """Canonical (HNF) basis of the integer row lattice spanned by ``rows``."""
    if not rows:
        return ()
    H, _ = hnf(rows)
    return tuple(r for r in H if not is_zero(r))


def lattice_kernel_basis(M: Sequence[Sequence]) -> IMat:
    """HNF basis of the saturated lattice {z integer : M z = 0}."""
    Mi = imat(M)
    if not Mi:
        raise ValueError("ambient dimension unknown for an empty matrix")
    n = len(Mi[0])
    H, U = hnf(transpose(Mi))
    r = sum(1 for row in H if not is_zero(row))
    return hnf_basis(U[r:]) if r < n else ()


def saturated_span_basis(vectors: Sequence[Sequence]) -> IMat:
    """HNF basis of span_Q(vectors) ∩ Z^n (the saturation of the span)."""
    vs = [v for v in vectors if not is_zero(v)]
    if not vs:
        return ()
    n = len(vs[0])
    if rank(vs) == n:
        return identity(n)
    ortho = nullspace(vs)
    return lattice_kernel_basis([primitive(a) for a in ortho])


def solve_integer(M: Sequence[Sequence], b: Sequence) -> Optional[IVec]:
    """One integer solution of M x = b, or None if there is none."""
    Mi = imat(M)
    bi = ivec(b)
    if not Mi:
        return ()
    n = len(Mi[0])
    if n == 0:
        return () if is_zero(bi) else None
    # Row-reduce M^T so that M = H^T U^{-T}; solve the triangular system H^T z = b.
    H, U = hnf(transpose(Mi))
    m = len(Mi)
    z = [0] * n
    used = 0
    Ht = transpose(H)  # m x n lower-triangular-ish
    for i in range(m):
        acc = bi[i] - sum(Ht[i][j] * z[j] for j in range(used))
        piv = Ht[i][used] if used < n else 0
        if piv == 0:
            if acc != 0:
                return None
            continue
        if acc % piv != 0:
            return None
        z[used] = acc // piv
        used += 1
    x = mat_vec(transpose(U), z)
    if mat_vec(Mi, x) != tuple(bi):
        return None
    return ivec(x)


def snf_diagonal(M: Sequence[Sequence]) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith normal form (invariant factors) of M."""
    A = [list(r) for r in imat(M)]
    m = len(A)
    n = len(A[0]) if m else 0
    diag: list[int] = []
    top = 0
    while top < m and top < n:
        if all(A[i][j] == 0 for i in range(top, m) for j in range(top, n)):
            break
        while True:
            i0, j0 = min(
                ((i, j) for i in range(top, m) for j in range(top, n) if A[i][j] != 0),
                key=lambda ij: abs(A[ij[0]][ij[1]]),
            )
            A[top], A[i0] = A[i0], A[top]
            for row in A:
                row[top], row[j0] = row[j0], row[top]
            p = A[top][top]
            clean = True
            for i in range(top + 1, m):
                q = A[i][top] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[top])]
                if A[i][top] != 0:
                    clean = False
            for j in range(top + 1, n):
                q = A[top][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[top]
                if A[top][j] != 0:
                    clean = False
            if clean:
                break
        diag.append(abs(A[top][top]))
        top += 1
    # enforce divisibility d1 | d2 | ...
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            g = gcd(a, b)
            diag[i], diag[j] = g, a * b // g if g else 0
    return tuple(diag)


def quotient_coords(S: Sequence[Sequence]) -> tuple[IMat, IMat]:
    """Canonical coordinates on the quotient of Z^n by the column lattice of S.

    S is an integer n x d matrix of full column rank whose columns span a
    saturated sublattice.  Returns (alpha, section): alpha is the (n-d) x n
    projection with alpha @ S = 0 whose rows are the HNF basis of the
    annihilator lattice, and section is an integer n x (n-d) right inverse,
    alpha @ section = identity.
    """
    Si = imat(S)
    n = len(Si)
    d = len(Si[0]) if n else 0
    if rank(Si) != d:
        raise ValueError("columns of S must be linearly independent")
    cols = transpose(Si)
    if cols and hnf_basis(cols) != saturated_span_basis(cols):
        import warnings

        warnings.warn(
            "column lattice is not saturated; using its saturation",
            stacklevel=2,
        )
    alpha = lattice_kernel_basis(cols) if cols else identity(n)
    k = len(alpha)
    if k != n - d:
        raise ValueError("annihilator has unexpected rank")
    section_cols = []
    for j in range(k):
        e = tuple(1 if i == j else 0 for i in range(k))
        x = solve_integer(alpha, e)
        if x is None:
            raise ValueError("quotient projection is not surjective over Z")
        section_cols.append(x)
    section = transpose(section_cols)
    return alpha, imat(section)
