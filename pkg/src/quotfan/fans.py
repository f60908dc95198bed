"""Fans and quasifans: normal fans, coarsest common refinements, preimages,
and the compatibility / properness predicates for maps of fans.

A quasifan is a fan all of whose cones contain a fixed linear subspace; the
``lineality`` field records that subspace (empty for a genuine fan).  Supports
are unions of the maximal cones; a support is reported as a single ``Cone``
exactly when the union happens to be convex, which is checked, not assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .cones import Cone, dual_cone, intersect, is_face_of, map_cone
from .exactlin import IMat, dot, rank
from .polyhedra import Polyhedron


@dataclass(frozen=True, eq=False)
class Fan:
    dim: int
    lineality: IMat
    rays: IMat
    max_cones: tuple[tuple[int, ...], ...]
    cones: tuple[Cone, ...] = field(repr=False)

    @staticmethod
    def from_cones(cones: Iterable[Cone], check: bool = True) -> "Fan":
        cones = list(dict.fromkeys(cones))
        if not cones:
            raise ValueError("a fan needs at least one cone")
        dim = cones[0].dim
        if any(c.dim != dim for c in cones):
            raise ValueError("dimension mismatch among cones")
        lin = cones[0].lineality
        if any(c.lineality != lin for c in cones):
            raise ValueError("cones do not share a common lineality space")
        # keep only inclusion-maximal cones
        maximal = [
            c for c in cones
            if not any(d is not c and d.contains_cone(c) for d in cones)
        ]
        if check:
            for c, d in itertools.combinations(maximal, 2):
                f = intersect(c, d)
                if not (is_face_of(f, c) and is_face_of(f, d)):
                    raise ValueError(
                        f"not a fan: {c!r} and {d!r} do not meet in a common face"
                    )
        ray_set = sorted({r for c in maximal for r in c.rays})
        index = {r: i for i, r in enumerate(ray_set)}
        keyed = sorted(
            (tuple(sorted(index[r] for r in c.rays)), c) for c in maximal
        )
        return Fan(
            dim,
            lin,
            tuple(ray_set),
            tuple(k for k, _ in keyed),
            tuple(c for _, c in keyed),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Fan):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.lineality == other.lineality
            and self.rays == other.rays
            and self.max_cones == other.max_cones
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.lineality, self.rays, self.max_cones))

    def __repr__(self) -> str:
        return (
            f"Fan(dim={self.dim}, rays={list(self.rays)}, "
            f"max_cones={list(self.max_cones)}, lineality={list(self.lineality)})"
        )

    @cached_property
    def support_cone(self) -> Optional[Cone]:
        """The support as a Cone when it is convex, else None (a proper union)."""
        hull = Cone.from_rays(self.rays, self.lineality, dim=self.dim)
        return hull if cone_in_union(hull, self.cones) else None

    def supports(self, v: Sequence) -> bool:
        return any(c.contains(v) for c in self.cones)


def fan_of_cone(C: Cone) -> Fan:
    """The fan of all faces of a single cone (stored by its maximal cone)."""
    return Fan.from_cones([C], check=False)


def cone_in_union(c: Cone, cones: Sequence[Cone]) -> bool:
    """Exact test whether the cone c is covered by the union of the cones.

    Splits c along the facet hyperplanes of the candidate cones until each
    piece either lies inside a single candidate or a piece escapes; a finite
    union of lower-dimensional slices cannot cover a piece, so the base case
    is sound.
    """
    hyperplanes: list = []
    seen = set()
    for d in cones:
        for h in d.ineqs + d.eqs:
            key = h if h > tuple(-x for x in h) else tuple(-x for x in h)
            if key not in seen:
                seen.add(key)
                hyperplanes.append(h)

    def rec(piece: Cone, hs: list) -> bool:
        if any(d.contains_cone(piece) for d in cones):
            return True
        gens = piece.generators()
        for i, h in enumerate(hs):
            vals = [dot(h, g) for g in gens]
            if any(v > 0 for v in vals) and any(v < 0 for v in vals):
                rest = hs[i + 1:]
                pos = Cone.from_inequalities(piece.ineqs + (h,), piece.eqs, dim=piece.dim)
                neg = Cone.from_inequalities(
                    piece.ineqs + (tuple(-x for x in h),), piece.eqs, dim=piece.dim
                )
                return rec(pos, rest) and rec(neg, rest)
        return False

    return rec(c, hyperplanes)


def supports_equal(F1: Fan, F2: Fan) -> bool:
    if F1.dim != F2.dim:
        raise ValueError("dimension mismatch")
    return all(cone_in_union(c, F2.cones) for c in F1.cones) and all(
        cone_in_union(d, F1.cones) for d in F2.cones
    )


def fans_equal(F1: Fan, F2: Fan) -> bool:
    return F1 == F2


def is_refinement(F1: Fan, F2: Fan) -> bool:
    """Whether every cone of F1 lies in a cone of F2 and the supports agree."""
    if F1.dim != F2.dim:
        raise ValueError("dimension mismatch")
    contained = all(
        any(d.contains_cone(c) for d in F2.cones) for c in F1.cones
    )
    return contained and supports_equal(F1, F2)


def normal_fan(P: Polyhedron) -> Fan:
    """Fan of functionals grouped by where their minimum over P is attained.

    Maximal cones correspond to the vertices (minimal faces) of P; the support
    is the dual of the recession cone.
    """
    if P.is_empty:
        raise ValueError("empty polyhedron has no normal fan")
    lin = [e for e, _ in P.eqs]
    cones = []
    for v in P.vertices:
        tight = [a for a, b in P.ineqs if dot(a, v) == b]
        cones.append(Cone.from_rays(tight, lin, dim=P.dim))
    return Fan.from_cones(cones, check=False)


def common_refinement(fans: Sequence[Fan]) -> Fan:
    """Coarsest common refinement: all intersections of cones, one fan."""
    if not fans:
        raise ValueError("need at least one fan")
    dim = fans[0].dim
    if any(f.dim != dim for f in fans):
        raise ValueError("dimension mismatch")
    current = list(dict.fromkeys(fans[0].cones))
    for f in fans[1:]:
        current = list(dict.fromkeys(
            intersect(c, d) for c in current for d in f.cones
        ))
    return Fan.from_cones(current, check=False)


def preimage_quasifan(F: Fan, alpha: Sequence[Sequence], source_dim: int | None = None) -> Fan:
    """Pull a fan back along a surjection; every cone gains ker(alpha)."""
    if alpha and rank(alpha) != F.dim:
        raise ValueError("alpha must be surjective onto the fan's ambient space")
    if not alpha and F.dim != 0:
        raise ValueError("alpha must be surjective onto the fan's ambient space")
    if source_dim is None:
        if not alpha:
            raise ValueError("source_dim required for an empty matrix")
        source_dim = len(alpha[0])
    cones = [map_cone(c, alpha, "preimage", source_dim=source_dim) for c in F.cones]
    return Fan.from_cones(cones, check=False)


def refine_with_cone(F: Fan, sigma: Cone) -> Fan:
    """The fan {c ∩ sigma : c in F}; pointed whenever sigma is pointed."""
    if F.dim != sigma.dim:
        raise ValueError("dimension mismatch")
    return Fan.from_cones([intersect(c, sigma) for c in F.cones], check=False)


def check_compatible(M: Sequence[Sequence], F1: Fan, F2: Fan, source_dim: int | None = None) -> bool:
    """Whether M maps every cone of F1 into some cone of F2."""
    for c in F1.cones:
        img = map_cone(c, M, "image", source_dim=source_dim)
        if not any(d.contains_cone(img) for d in F2.cones):
            return False
    return True


def check_proper(M: Sequence[Sequence], F1: Fan, F2: Fan, source_dim: int | None = None) -> bool:
    """Whether M^{-1}(|F2|) = |F1|; presupposes check_compatible(M, F1, F2)."""
    if not check_compatible(M, F1, F2, source_dim=source_dim):
        raise ValueError("map is not compatible with the fans")
    # compatibility already gives |F1| ⊆ M^{-1}(|F2|); check the reverse inclusion
    sdim = source_dim if source_dim is not None else F1.dim
    preimages = [map_cone(d, M, "preimage", source_dim=sdim) for d in F2.cones]
    return all(cone_in_union(p, F1.cones) for p in preimages)
