"""Families and operators indexed by an ordered pair of operations (γ, γ′).

The work is done by per-point *reach antichains*: the inclusion-minimal sets
of the form U^γ ∩ V^γ′ with U, V e*-open around the point.  A set is
bi-open exactly when every one of its points has a reach set inside it, and
the pointwise bi-closure of A collects the points with no reach set avoiding
A.  Both questions are answered for all subsets at once from one coverage
table.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels as K
from .operations import BoundOperation, Verdict
from .space import FiniteSpace, SetFamily, SpaceMismatch


@dataclass(frozen=True, eq=False)
class BiopContext:
    space: FiniteSpace
    gamma: BoundOperation
    gamma_prime: BoundOperation

    def __post_init__(self):
        if self.gamma.space != self.space or self.gamma_prime.space != self.space:
            raise SpaceMismatch("both operations must be bound to the context's space")

    def __repr__(self):
        return f"BiopContext({self.space!r}, {self.gamma!r}, {self.gamma_prime!r})"

    @cached_property
    def reach(self) -> tuple[np.ndarray, ...]:
        g, gp = self.gamma.point_images, self.gamma_prime.point_images
        return tuple(K.meet_antichain(g[x], gp[x]) for x in range(self.space.n))

    @cached_property
    def coverage(self) -> np.ndarray:
        return K.coverage(self.space.n, self.reach)

    @cached_property
    def biopen_flags(self) -> np.ndarray:
        return K.stable_family(self.space.n, self.coverage)

    @cached_property
    def biclosed_flags(self) -> np.ndarray:
        a = np.arange(self.space.size)
        return self.biopen_flags[self.space.full & ~a]

    @cached_property
    def pointwise_table(self) -> np.ndarray:
        return K.pointwise_closure(self.space.n, self.coverage)

    @cached_property
    def lattice_table(self) -> np.ndarray:
        a = np.arange(self.space.size, dtype=K.MASK_DTYPE)
        return K.superset_and(self.space.n, np.where(self.biclosed_flags, a, self.space.full))

    @cached_property
    def interior_table(self) -> np.ndarray:
        a = np.arange(self.space.size, dtype=K.MASK_DTYPE)
        return K.subset_or(self.space.n, np.where(self.biopen_flags, a, 0))

    @cached_property
    def classic_reach(self) -> tuple[np.ndarray, ...]:
        opens = np.asarray(self.space.open_list, dtype=K.MASK_DTYPE)
        out = []
        for x in range(self.space.n):
            around = opens[(opens >> x) & 1 == 1]
            out.append(K.meet_antichain(
                K.minimal_elements(self.gamma.images[around]),
                K.minimal_elements(self.gamma_prime.images[around]),
            ))
        return tuple(out)

    @cached_property
    def classic_biopen_flags(self) -> np.ndarray:
        return K.stable_family(self.space.n, K.coverage(self.space.n, self.classic_reach))


def minimal_reach(ctx: BiopContext, x) -> tuple[int, ...]:
    """Minimal sets U^γ ∩ V^γ′ over e*-open U, V containing ``x``, ascending."""
    return tuple(int(m) for m in ctx.reach[ctx.space.index(x)])


def biopen_family(ctx: BiopContext) -> SetFamily:
    return SetFamily.from_flags(ctx.space, ctx.biopen_flags, "e*O_[γ,γ′]")


def biclosed_family(ctx: BiopContext) -> SetFamily:
    return SetFamily.from_flags(ctx.space, ctx.biclosed_flags, "e*C_[γ,γ′]")


def is_biopen(ctx: BiopContext, a: int) -> bool:
    return bool(ctx.biopen_flags[ctx.space.check(a)])


def is_biclosed(ctx: BiopContext, a: int) -> bool:
    return bool(ctx.biclosed_flags[ctx.space.check(a)])


def is_classic_biopen(ctx: BiopContext, a: int) -> bool:
    """Bi-openness with U and V restricted to the open sets of the space."""
    return bool(ctx.classic_biopen_flags[ctx.space.check(a)])


def biop_closure_pointwise(ctx: BiopContext, a: int) -> int:
    """Points x such that every U^γ ∩ W^γ′ (U, W e*-open around x) meets ``a``."""
    return int(ctx.pointwise_table[ctx.space.check(a)])


def biop_closure_lattice(ctx: BiopContext, a: int) -> int:
    """Intersection of the bi-closed supersets of ``a``."""
    return int(ctx.lattice_table[ctx.space.check(a)])


def biop_interior(ctx: BiopContext, a: int) -> int:
    return int(ctx.interior_table[ctx.space.check(a)])


def is_biop_regular_space(ctx: BiopContext) -> Verdict:
    """Every e*-open U around x contains a reach set of x."""
    space = ctx.space
    dom = space.estar_masks
    for x in range(space.n):
        around = dom[(dom >> x) & 1 == 1]
        fails = ~ctx.coverage[x][around]
        if fails.any():
            u = int(around[np.argmax(fails)])
            return Verdict(False, {"x": space.points[x], "U": space.names(u)})
    return Verdict(True)
