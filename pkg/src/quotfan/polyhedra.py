"""Rational polyhedra: V/H descriptions, Minkowski sums, support functions,
fiber polyhedra of a weight projection, lattice points and integer hulls.

A polyhedron is stored via homogenization as a cone in one dimension higher,
so all conversions reuse the double description machinery from ``cones``.
The empty polyhedron is a first-class value, not an error.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .cones import Cone
from .exactlin import (
    IMat,
    IVec,
    Mat,
    Vec,
    dot,
    hnf_basis,
    imat,
    is_zero,
    mat_vec,
    quotient_coords,
    solve_integer,
    solve_rational,
    transpose,
    vadd,
    vec,
)

# H-representation rows: (normal, offset) meaning <normal, x> >= offset,
# respectively <normal, x> = offset for equations.
HRow = tuple[IVec, int]


@dataclass(frozen=True)
class Polyhedron:
    dim: int
    vertices: Mat            # minimal-face representatives, lex-sorted
    rays: IMat               # primitive, lex-sorted
    lineality: IMat          # HNF basis
    ineqs: tuple[HRow, ...]
    eqs: tuple[HRow, ...]

    @staticmethod
    def empty(dim: int) -> "Polyhedron":
        return Polyhedron(dim, (), (), (), (((0,) * dim, 1),), ())

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_bounded(self) -> bool:
        return not self.is_empty and not self.rays and not self.lineality

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @staticmethod
    def from_h(ineqs: Iterable[tuple[Sequence, object]], eqs: Iterable[tuple[Sequence, object]] = (),
               dim: int | None = None) -> "Polyhedron":
        ineqs = [(vec(a), Fraction(b)) for a, b in ineqs]
        eqs = [(vec(e), Fraction(c)) for e, c in eqs]
        if dim is None:
            rows = ineqs + eqs
            if not rows:
                raise ValueError("ambient dimension required")
            dim = len(rows[0][0])
        cone_ineqs = [(-b,) + tuple(a) for a, b in ineqs]
        cone_ineqs.append((Fraction(1),) + (Fraction(0),) * dim)  # homogenizer >= 0
        cone_eqs = [(-c,) + tuple(e) for e, c in eqs]
        homog = Cone.from_inequalities(cone_ineqs, cone_eqs, dim=dim + 1)
        return _from_homog(homog, dim)

    @staticmethod
    def from_v(vertices: Iterable[Sequence], rays: Iterable[Sequence] = (),
               lineality: Iterable[Sequence] = (), dim: int | None = None) -> "Polyhedron":
        vertices = [vec(v) for v in vertices]
        rays = [vec(r) for r in rays]
        lineality = [vec(l) for l in lineality]
        if dim is None:
            pts = vertices + rays + lineality
            if not pts:
                raise ValueError("ambient dimension required")
            dim = len(pts[0])
        if not vertices:
            return Polyhedron.empty(dim)
        gens = [(Fraction(1),) + tuple(v) for v in vertices]
        gens += [(Fraction(0),) + tuple(r) for r in rays]
        lins = [(Fraction(0),) + tuple(l) for l in lineality]
        homog = Cone.from_rays(gens, lins, dim=dim + 1)
        return _from_homog(homog, dim)

    def contains(self, x: Sequence) -> bool:
        x = vec(x)
        if len(x) != self.dim:
            raise ValueError("dimension mismatch")
        if self.is_empty:
            return False
        return all(dot(e, x) == c for e, c in self.eqs) and all(
            dot(a, x) >= b for a, b in self.ineqs
        )

    def translate(self, t: Sequence) -> "Polyhedron":
        t = vec(t)
        if self.is_empty:
            return self
        return Polyhedron(
            self.dim,
            tuple(sorted(vadd(v, t) for v in self.vertices)),
            self.rays,
            self.lineality,
            tuple((a, b + dot(a, t)) for a, b in self.ineqs),
            tuple((e, c + dot(e, t)) for e, c in self.eqs),
        )

    def linear_image(self, M: Sequence[Sequence], target_dim: int | None = None) -> "Polyhedron":
        """Image under x -> M x; M must be injective on the affine hull."""
        rows = len(M)
        if target_dim is None:
            target_dim = rows
        if self.is_empty:
            return Polyhedron.empty(target_dim)
        return Polyhedron.from_v(
            [mat_vec(M, v) for v in self.vertices],
            [mat_vec(M, r) for r in self.rays],
            [mat_vec(M, l) for l in self.lineality],
            dim=target_dim,
        )


def _from_homog(homog: Cone, dim: int) -> Polyhedron:
    verts = []
    rays = []
    for r in homog.rays:
        if r[0] > 0:
            verts.append(tuple(Fraction(x, r[0]) for x in r[1:]))
        else:
            rays.append(r[1:])
    if not verts:
        return Polyhedron.empty(dim)
    lin = hnf_basis([l[1:] for l in homog.lineality])
    ineqs = []
    for h in homog.ineqs:
        a = h[1:]
        if is_zero(a):
            continue  # the homogenizing facet carries no point constraint
        ineqs.append((a, -h[0]))
    eqs = []
    for e in homog.eqs:
        if is_zero(e[1:]):
            return Polyhedron.empty(dim)
        eqs.append((e[1:], -e[0]))
    return Polyhedron(
        dim,
        tuple(sorted(verts)),
        tuple(sorted(rays)),
        lin,
        tuple(sorted(ineqs)),
        tuple(sorted(eqs)),
    )


def recession_cone(P: Polyhedron) -> Cone:
    """Cone of unbounded directions of a nonempty polyhedron."""
    if P.is_empty:
        raise ValueError("empty polyhedron has no recession cone")
    return Cone.from_rays(P.rays, P.lineality, dim=P.dim)


def minkowski_sum(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    if P.dim != Q.dim:
        raise ValueError("dimension mismatch")
    if P.is_empty or Q.is_empty:
        return Polyhedron.empty(P.dim)
    verts = [vadd(v, w) for v in P.vertices for w in Q.vertices]
    return Polyhedron.from_v(verts, P.rays + Q.rays, P.lineality + Q.lineality, dim=P.dim)


def support_value(P: Polyhedron, m: Sequence) -> Optional[Fraction]:
    """min <m, P>, or None when the functional is unbounded below on P."""
    if P.is_empty:
        raise ValueError("empty polyhedron has no support values")
    m = vec(m)
    if any(dot(m, r) < 0 for r in P.rays):
        return None
    if any(dot(m, l) != 0 for l in P.lineality):
        return None
    return min(dot(m, v) for v in P.vertices)


def lattice_points(P: Polyhedron, box: tuple[Sequence, Sequence] | None = None) -> tuple[IVec, ...]:
    """All integer points of P, lex-sorted; P must be bounded unless a box is given."""
    if P.is_empty:
        return ()
    if box is None:
        if not P.is_bounded:
            raise ValueError("unbounded polyhedron needs an explicit box")
        lo = [math.ceil(min(v[i] for v in P.vertices)) for i in range(P.dim)]
        hi = [math.floor(max(v[i] for v in P.vertices)) for i in range(P.dim)]
    else:
        lo = [math.ceil(Fraction(x)) for x in box[0]]
        hi = [math.floor(Fraction(x)) for x in box[1]]
    if any(l > h for l, h in zip(lo, hi)):
        return ()
    return tuple(
        p for p in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi)))
        if P.contains(p)
    )


def integer_hull(P: Polyhedron) -> Polyhedron:
    """Convex hull of the lattice points of P, plus the recession cone of P.

    Coordinates are assumed lattice-adapted (the lattice of record is Z^dim).
    Every lattice point of P reduces, by subtracting integer multiples of the
    recession generators, into conv(vertices) + zonotope(generators); scanning
    that bounded region therefore finds a generating set of lattice points.
    """
    if P.is_empty:
        return P
    gens = list(P.rays) + list(P.lineality) + [tuple(-x for x in l) for l in P.lineality]
    lo = []
    hi = []
    for i in range(P.dim):
        base_lo = min(v[i] for v in P.vertices)
        base_hi = max(v[i] for v in P.vertices)
        lo.append(base_lo + sum(min(0, g[i]) for g in gens))
        hi.append(base_hi + sum(max(0, g[i]) for g in gens))
    pts = lattice_points(P, box=(lo, hi))
    if not pts:
        return Polyhedron.empty(P.dim)
    return Polyhedron.from_v(pts, P.rays, P.lineality, dim=P.dim)


@dataclass(frozen=True)
class FiberPolyhedron:
    """A fiber of the weight projection, in kernel coordinates.

    ``poly`` lives in the canonical quotient coordinates dual to the quotient
    projection; ``basepoint`` records a solution of beta x = chi so that points
    can be pulled back to the ambient character space as
    basepoint + sum u_i * kernel_row_i.
    """

    poly: Polyhedron
    basepoint: Vec
    kernel_rows: IMat  # rows of the quotient projection; their span is ker(beta)

    def to_ambient(self, u: Sequence) -> Vec:
        x = vec(self.basepoint)
        for c, row in zip(u, self.kernel_rows):
            x = tuple(a + Fraction(c) * b for a, b in zip(x, row))
        return x

    def ambient_vertices(self) -> Mat:
        return tuple(sorted(self.to_ambient(v) for v in self.poly.vertices))

    def ambient_rays(self) -> IMat:
        from .exactlin import primitive

        return tuple(sorted(
            primitive(self.to_ambient(r)) if not is_zero(self.to_ambient(r)) else r
            for r in self.poly.rays
        ))


def fiber_polyhedron(sigma_dual: Cone, beta: Sequence[Sequence], chi: Sequence) -> FiberPolyhedron:
    """The slice of sigma_dual over the character chi, in kernel coordinates.

    The kernel basis is the rows of the canonical quotient projection computed
    from beta, which makes the standard duality on the kernel coordinates agree
    with the canonical coordinates on the quotient one-parameter space.
    For integral chi the basepoint is integral, so the standard lattice of the
    kernel coordinates is exactly the ambient character lattice on the fiber.
    """
    n = sigma_dual.dim
    beta_rows = [vec(r) for r in beta]
    if any(len(r) != n for r in beta_rows):
        raise ValueError("beta must map the ambient character space")
    chi = vec(chi)
    if len(chi) != len(beta_rows):
        raise ValueError("chi must live in the target of beta")
    alpha, _ = quotient_coords(transpose(imat(beta_rows)))
    k = len(alpha)
    x0: Optional[Vec] = None
    if all(x.denominator == 1 for x in chi):
        xi = solve_integer(beta_rows, [int(x) for x in chi])
        if xi is not None:
            x0 = vec(xi)
    if x0 is None:
        x0 = solve_rational(beta_rows, chi)
    if x0 is None:
        return FiberPolyhedron(Polyhedron.empty(k), (Fraction(0),) * n, alpha)
    ineqs = []
    for g in sigma_dual.ineqs:
        ineqs.append((tuple(dot(row, g) for row in alpha), -dot(x0, g)))
    eqs = []
    for e in sigma_dual.eqs:
        eqs.append((tuple(dot(row, e) for row in alpha), -dot(x0, e)))
    poly = Polyhedron.from_h(ineqs, eqs, dim=k)
    return FiberPolyhedron(poly, x0, alpha)
