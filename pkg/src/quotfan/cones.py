"""Rational polyhedral cones with dual (generator / inequality) descriptions.

A ``Cone`` always carries both descriptions in canonical form:

* ``rays``      -- extreme rays, primitive integer, projected orthogonally
                   modulo the lineality space, lex-sorted;
* ``lineality`` -- HNF basis of the saturated lineality lattice;
* ``ineqs``     -- facet normals, primitive integer, projected modulo the
                   orthogonal complement of the span, lex-sorted;
* ``eqs``       -- HNF basis of the saturated lattice of span(C)^perp.

With these conventions duality is literally a field swap, and two cones are
equal as sets iff their canonical fields coincide.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .exactlin import (
    IMat,
    IVec,
    Vec,
    dot,
    is_zero,
    primitive,
    saturated_span_basis,
    solve_rational,
    vec,
    vneg,
    vsub,
)


class Location(Enum):
    OUTSIDE = "outside"
    BOUNDARY = "boundary"
    RELINT = "relative-interior"


def _project_off(v: Sequence, basis: Sequence[Sequence]) -> Vec:
    """Orthogonal projection of v onto the complement of span(basis)."""
    if not basis:
        return vec(v)
    gram = [[dot(a, b) for b in basis] for a in basis]
    rhs = [dot(a, v) for a in basis]
    coeff = solve_rational(gram, rhs)
    w = vec(v)
    for c, b in zip(coeff, basis):
        w = tuple(x - c * y for x, y in zip(w, b))
    return w


def _canonical_rays(rays: Iterable[Sequence], lin: Sequence[Sequence]) -> IMat:
    out = set()
    for r in rays:
        p = _project_off(r, lin)
        if not is_zero(p):
            out.add(primitive(p))
    return tuple(sorted(out))


def _dd(ineqs: Sequence[Sequence], dim: int) -> tuple[list[Vec], list[Vec]]:
    """Double description: rays and lineality of {x : <a,x> >= 0 for a in ineqs}.

    Starts from the full space and inserts one halfspace at a time, keeping
    per-ray tight-sets for the combinatorial adjacency test.
    """
    lin: list[Vec] = [vec(row) for row in (tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim))]
    rays: list[Vec] = []
    tight: list[int] = []  # bitmask over processed inequalities, parallel to rays
    seen: list[Vec] = []
    for a in ineqs:
        a = vec(a)
        if is_zero(a):
            continue
        idx = len(seen)
        vals_lin = [dot(a, l) for l in lin]
        j = next((i for i, v in enumerate(vals_lin) if v != 0), None)
        if j is not None:
            l0 = lin[j] if vals_lin[j] > 0 else vneg(lin[j])
            d0 = dot(a, l0)
            lin = [
                vsub(l, tuple(dot(a, l) / d0 * x for x in l0))
                for i, l in enumerate(lin)
                if i != j
            ]
            rays = [vsub(r, tuple(dot(a, r) / d0 * x for x in l0)) for r in rays]
            # all old rays now sit on the new hyperplane; l0 becomes a ray,
            # tight on every previously processed inequality
            tight = [t | (1 << idx) for t in tight]
            rays.append(l0)
            tight.append((1 << idx) - 1)
        else:
            vals = [dot(a, r) for r in rays]
            plus = [i for i, v in enumerate(vals) if v > 0]
            zero = [i for i, v in enumerate(vals) if v == 0]
            minus = [i for i, v in enumerate(vals) if v < 0]
            new_rays = [rays[i] for i in plus] + [rays[i] for i in zero]
            new_tight = [tight[i] for i in plus] + [tight[i] | (1 << idx) for i in zero]
            for p, q in itertools.product(plus, minus):
                common = tight[p] & tight[q]
                # adjacency: no third ray is tight on everything p and q share
                if any(
                    k not in (p, q) and tight[k] & common == common
                    for k in range(len(rays))
                ):
                    continue
                w = vsub(
                    tuple(vals[p] * x for x in rays[q]),
                    tuple(vals[q] * x for x in rays[p]),
                )
                new_rays.append(vec(primitive(w)))
                new_tight.append(common | (1 << idx))
            rays = new_rays
            tight = new_tight
        seen.append(a)
    return rays, lin


def _dual_data(rays: Sequence[Sequence], lin: Sequence[Sequence], dim: int) -> tuple[IMat, IMat]:
    """Canonical (rays, lineality-basis) of the dual of cone(rays) + span(lin)."""
    constraints = list(rays) + list(lin) + [vneg(l) for l in lin]
    d_rays, d_lin = _dd(constraints, dim)
    d_lin_basis = saturated_span_basis([primitive(l) for l in d_lin if not is_zero(l)])
    return _canonical_rays(d_rays, d_lin_basis), d_lin_basis


@dataclass(frozen=True)
class Cone:
    dim: int
    rays: IMat
    lineality: IMat
    ineqs: IMat
    eqs: IMat

    @staticmethod
    def from_rays(rays: Iterable[Sequence], lineality: Iterable[Sequence] = (), dim: int | None = None) -> "Cone":
        rays = [vec(r) for r in rays]
        lineality = [vec(l) for l in lineality]
        if dim is None:
            if not rays and not lineality:
                raise ValueError("ambient dimension required for the zero cone")
            dim = len((rays + lineality)[0])
        for v in rays + lineality:
            if len(v) != dim:
                raise ValueError("dimension mismatch among generators")
        ineqs, eqs = _dual_data(rays, lineality, dim)
        c_rays, c_lin = _dual_data(ineqs, eqs, dim)
        return Cone(dim, c_rays, c_lin, ineqs, eqs)

    @staticmethod
    def from_inequalities(ineqs: Iterable[Sequence], eqs: Iterable[Sequence] = (), dim: int | None = None) -> "Cone":
        ineqs = [vec(a) for a in ineqs]
        eqs = [vec(e) for e in eqs]
        if dim is None:
            if not ineqs and not eqs:
                raise ValueError("ambient dimension required for the full space")
            dim = len((ineqs + eqs)[0])
        for v in ineqs + eqs:
            if len(v) != dim:
                raise ValueError("dimension mismatch among constraints")
        c_rays, c_lin = _dual_data(ineqs, eqs, dim)
        c_ineqs, c_eqs = _dual_data(c_rays, c_lin, dim)
        return Cone(dim, c_rays, c_lin, c_ineqs, c_eqs)

    @staticmethod
    def full_space(dim: int) -> "Cone":
        return Cone.from_inequalities((), (), dim=dim)

    @staticmethod
    def zero(dim: int) -> "Cone":
        return Cone.from_rays((), (), dim=dim)

    # equality is set equality: the V-side is canonical and determines the cone
    def __eq__(self, other) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.rays == other.rays
            and self.lineality == other.lineality
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.rays, self.lineality))

    def __repr__(self) -> str:
        return f"Cone(dim={self.dim}, rays={list(self.rays)}, lineality={list(self.lineality)})"

    @property
    def space_dim(self) -> int:
        """Dimension of the cone as a convex body."""
        return self.dim - len(self.eqs)

    @property
    def is_pointed(self) -> bool:
        return not self.lineality

    @property
    def is_full_dimensional(self) -> bool:
        return not self.eqs

    def generators(self) -> IMat:
        """Rays plus +-lineality basis vectors: a generating set of the cone."""
        gens = list(self.rays)
        for l in self.lineality:
            gens.append(l)
            gens.append(tuple(-x for x in l))
        return tuple(gens)

    def contains(self, v: Sequence) -> bool:
        return self.locate(v) is not Location.OUTSIDE

    def locate(self, v: Sequence) -> Location:
        """Classify a point as outside, on the boundary, or in the relative interior."""
        v = vec(v)
        if len(v) != self.dim:
            raise ValueError("dimension mismatch")
        if any(dot(e, v) != 0 for e in self.eqs):
            return Location.OUTSIDE
        strict = True
        for h in self.ineqs:
            s = dot(h, v)
            if s < 0:
                return Location.OUTSIDE
            if s == 0:
                strict = False
        return Location.RELINT if strict else Location.BOUNDARY

    def contains_cone(self, other: "Cone") -> bool:
        return all(self.contains(g) for g in other.generators())

    def relint_point(self) -> IVec:
        """Deterministic relative-interior point: the sum of the canonical rays."""
        pt = [0] * self.dim
        for r in self.rays:
            pt = [a + b for a, b in zip(pt, r)]
        return tuple(pt)


def dual_cone(C: Cone) -> Cone:
    """{m : <m, c> >= 0 for all c in C}; swaps the two descriptions."""
    return Cone(C.dim, C.ineqs, C.eqs, C.rays, C.lineality)


def intersect(C1: Cone, C2: Cone) -> Cone:
    if C1.dim != C2.dim:
        raise ValueError("dimension mismatch")
    return Cone.from_inequalities(C1.ineqs + C2.ineqs, C1.eqs + C2.eqs, dim=C1.dim)


def intersect_all(cones: Sequence[Cone]) -> Cone:
    if not cones:
        raise ValueError("need at least one cone")
    ineqs: list = []
    eqs: list = []
    for c in cones:
        if c.dim != cones[0].dim:
            raise ValueError("dimension mismatch")
        ineqs.extend(c.ineqs)
        eqs.extend(c.eqs)
    return Cone.from_inequalities(ineqs, eqs, dim=cones[0].dim)


def map_cone(C: Cone, M: Sequence[Sequence], direction: str, source_dim: int | None = None) -> Cone:
    """Image {M c : c in C} or preimage {x : M x in C} of a cone under M.

    ``source_dim`` pins down the domain dimension when M has no rows (the
    projection onto a zero-dimensional quotient).
    """
    rows = len(M)
    cols = len(M[0]) if rows else source_dim
    if direction == "image":
        if cols is None or cols != C.dim:
            raise ValueError("dimension mismatch")
        rays = [tuple(dot(row, g) for row in M) for g in C.rays]
        lins = [tuple(dot(row, g) for row in M) for g in C.lineality]
        return Cone.from_rays([r for r in rays if not is_zero(r)], lins, dim=rows)
    if direction == "preimage":
        if rows != C.dim:
            raise ValueError("dimension mismatch")
        if cols is None:
            raise ValueError("source_dim required for an empty matrix")
        cols_of_M = list(zip(*M)) if rows else []
        ineqs = [tuple(dot(h, col) for col in cols_of_M) for h in C.ineqs]
        eqs = [tuple(dot(e, col) for col in cols_of_M) for e in C.eqs]
        return Cone.from_inequalities(ineqs, eqs, dim=cols)
    raise ValueError(f"unknown direction {direction!r}")


def face_from_tight(C: Cone, normals: Sequence[Sequence]) -> Cone:
    """The face of C where the given valid inequalities of C are tight."""
    rays = [r for r in C.rays if all(dot(h, r) == 0 for h in normals)]
    return Cone.from_rays(rays, C.lineality, dim=C.dim)


def facets(C: Cone) -> tuple[Cone, ...]:
    return tuple(face_from_tight(C, (h,)) for h in C.ineqs)


def faces(C: Cone) -> tuple[Cone, ...]:
    """All faces of C, including C itself and the minimal face."""
    found: dict[Cone, None] = {}

    def walk(F: Cone) -> None:
        if F in found:
            return
        found[F] = None
        for G in facets(F):
            walk(G)

    walk(C)
    return tuple(found)


def is_face_of(F: Cone, C: Cone) -> bool:
    """Whether F is a face of C (F = C cut by the inequalities tight on it)."""
    if not C.contains_cone(F):
        return False
    tight = [h for h in C.ineqs if all(dot(h, g) == 0 for g in F.generators())]
    return face_from_tight(C, tight) == F
