"""GIT data of a subtorus acting on an affine toric variety: weight cone,
orbit cones, GIT cones, the GIT fan, and (semi)stable orbit sets.

Orbits correspond to faces of the defining cone; the orbit cone of the orbit
attached to a face F is the image under the weight projection of the dual
face of F.  All cones here live in the character space of the subtorus.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .cones import Cone, Location, dual_cone, faces, intersect_all, map_cone
from .exactlin import (
    IMat,
    dot,
    hnf_basis,
    imat,
    quotient_coords,
    saturated_span_basis,
    transpose,
)
from .fans import Fan


@dataclass(frozen=True)
class TorusDowngrade:
    """An affine toric variety with a distinguished subtorus of its big torus.

    ``sigma`` is the pointed, full-dimensional defining cone in the lattice of
    one-parameter subgroups of the big torus; ``beta`` (the transposed weight
    matrix) restricts characters to the subtorus, ``alpha`` projects
    one-parameter subgroups onto the quotient torus, and ``section`` is an
    integer right inverse of ``alpha``.
    """

    rank: int
    subtorus_rank: int
    sigma: Cone
    sigma_dual: Cone
    beta: IMat     # d x n
    alpha: IMat    # (n-d) x n
    section: IMat  # n x (n-d)

    @staticmethod
    def build(sigma: Cone, weights: Iterable[Sequence]) -> "TorusDowngrade":
        n = sigma.dim
        if sigma.lineality:
            raise ValueError("sigma must be pointed")
        if sigma.eqs:
            raise ValueError("sigma must be full-dimensional")
        rows = imat(weights)
        if not rows:
            raise ValueError("need at least one subtorus weight vector")
        if any(len(r) != n for r in rows):
            raise ValueError("weight vectors must have length equal to the rank")
        sat = saturated_span_basis(rows)
        if hnf_basis(rows) != sat:
            warnings.warn(
                "subtorus weights do not span a saturated lattice; "
                "replacing them by a basis of the saturation",
                stacklevel=2,
            )
        d = len(sat)
        alpha, section = quotient_coords(transpose(sat))
        return TorusDowngrade(n, d, sigma, dual_cone(sigma), sat, alpha, section)

    @cached_property
    def sigma_faces(self) -> tuple[Cone, ...]:
        return faces(self.sigma)

    @cached_property
    def dual_faces(self) -> tuple[Cone, ...]:
        """dual_faces[i] is the face of sigma_dual orthogonal to sigma_faces[i]."""
        out = []
        for F in self.sigma_faces:
            rays = [
                r for r in self.sigma_dual.rays
                if all(dot(r, g) == 0 for g in F.rays)
            ]
            out.append(Cone.from_rays(rays, dim=self.rank))
        return tuple(out)

    @cached_property
    def face_orbit_cones(self) -> tuple[Cone, ...]:
        """face_orbit_cones[i] is the orbit cone of the orbit of sigma_faces[i]."""
        return tuple(
            map_cone(G, self.beta, "image", source_dim=self.rank)
            for G in self.dual_faces
        )

    @cached_property
    def omega(self) -> Cone:
        return map_cone(self.sigma_dual, self.beta, "image", source_dim=self.rank)


@dataclass(frozen=True)
class GitFan:
    weight_cone: Cone
    orbit_cones: tuple[Cone, ...]
    git_cones: tuple[Cone, ...]   # every GIT cone, canonically ordered
    fan: Fan
    q0: tuple[Cone, ...]          # GIT cones meeting the weight cone's interior


def weight_cone(D: TorusDowngrade) -> Cone:
    """Image of the dual cone under the weight projection."""
    return D.omega


def orbit_cones(D: TorusDowngrade) -> tuple[Cone, ...]:
    """Distinct orbit cones, i.e. weight images of the dual faces."""
    return tuple(sorted(set(D.face_orbit_cones), key=_cone_key))


def git_cone(D: TorusDowngrade, chi: Sequence) -> Cone:
    """Intersection of all orbit cones containing chi."""
    containing = [w for w in orbit_cones(D) if w.contains(chi)]
    if not containing:
        raise ValueError("character lies outside the weight cone")
    return intersect_all(containing)


def git_fan(D: TorusDowngrade) -> GitFan:
    """All GIT cones, enumerated by closing the orbit cones under intersection
    and reading off the GIT cone at a relative-interior point of each cell."""
    orbit = orbit_cones(D)
    closure: dict[Cone, None] = dict.fromkeys(orbit)
    frontier = list(orbit)
    while frontier:
        fresh = []
        for c in frontier:
            for w in orbit:
                x = intersect_all([c, w])
                if x not in closure:
                    closure[x] = None
                    fresh.append(x)
        frontier = fresh
    cones = sorted(
        {git_cone(D, c.relint_point()) for c in closure},
        key=_cone_key,
    )
    omega = D.omega
    q0 = tuple(
        lam for lam in cones if omega.locate(lam.relint_point()) is Location.RELINT
    )
    fan = Fan.from_cones(cones)
    return GitFan(omega, orbit, tuple(cones), fan, q0)


def semistable_faces(D: TorusDowngrade, chi: Sequence) -> tuple[Cone, ...]:
    """Faces of sigma whose orbits admit an invariant section nonzero at chi."""
    return tuple(
        F
        for F, w in zip(D.sigma_faces, D.face_orbit_cones)
        if w.contains(chi)
    )


def stable_faces(D: TorusDowngrade) -> tuple[Cone, ...]:
    """Faces of sigma whose orbit cone is the whole weight cone."""
    omega = D.omega
    return tuple(
        F
        for F, w in zip(D.sigma_faces, D.face_orbit_cones)
        if w.contains_cone(omega)
    )


def _cone_key(c: Cone):
    return (len(c.lineality), c.lineality, len(c.rays), c.rays)
