"""Expansive operations on the e*-open family and their predicates.

An operation assigns to every e*-open set V a superset V^γ.  Operations are
described by a small closed-form language (:class:`OperationSpec`) and then
bound to a space, which materializes the image of every e*-open set.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Union

import numpy as np

from . import _kernels as K
from .space import FiniteSpace, SetFamily, SpaceMismatch, bits

NO_IMAGE = -1


class OperationError(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class NotExpansive(OperationError):
    pass


class TableIncomplete(OperationError):
    pass


class TableKeyNotEstarOpen(OperationError):
    pass


class NotInDomain(OperationError):
    pass


# ---------------------------------------------------------------------------
# spec language


@dataclass(frozen=True)
class ContainsPoint:
    point: str


@dataclass(frozen=True)
class EqualsSet:
    members: frozenset


@dataclass(frozen=True)
class MemberOfList:
    sets: tuple  # of frozensets


Condition = Union[ContainsPoint, EqualsSet, MemberOfList]


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class ConstantX:
    pass


@dataclass(frozen=True)
class ClosureOp:
    pass


@dataclass(frozen=True)
class Table:
    """Explicit images keyed by e*-open sets, all as frozensets of point names."""

    mapping: tuple  # of (frozenset key, frozenset value), sorted

    @classmethod
    def of(cls, mapping: dict) -> "Table":
        items = {frozenset(k): frozenset(v) for k, v in dict(mapping).items()}
        return cls(tuple(sorted(items.items(), key=lambda kv: (sorted(kv[0]), sorted(kv[1])))))

    @classmethod
    def from_masks(cls, space: FiniteSpace, images: dict) -> "Table":
        return cls.of({frozenset(space.names(k)): frozenset(space.names(v)) for k, v in images.items()})


@dataclass(frozen=True)
class Piecewise:
    cond: Condition
    then: "OperationSpec"
    otherwise: "OperationSpec"


OperationSpec = Union[Identity, ConstantX, ClosureOp, Table, Piecewise]


def _condition_flags(cond, space: FiniteSpace, dom: np.ndarray) -> np.ndarray:
    if isinstance(cond, ContainsPoint):
        return (dom >> space.index(cond.point)) & 1 == 1
    if isinstance(cond, EqualsSet):
        return dom == space.mask(cond.members)
    if isinstance(cond, MemberOfList):
        targets = [space.mask(s) for s in cond.sets]
        return np.isin(dom, np.asarray(targets, dtype=K.MASK_DTYPE))
    raise TypeError(f"unknown condition {cond!r}")


def evaluate(spec, space: FiniteSpace, dom: np.ndarray) -> np.ndarray:
    """Images of the masks in ``dom`` (all assumed e*-open) under ``spec``."""
    dom = np.asarray(dom, dtype=K.MASK_DTYPE)
    if isinstance(spec, Identity):
        return dom.copy()
    if isinstance(spec, ConstantX):
        return np.full(dom.shape, space.full, dtype=K.MASK_DTYPE)
    if isinstance(spec, ClosureOp):
        return space.closure_table[dom]
    if isinstance(spec, Piecewise):
        cond = _condition_flags(spec.cond, space, dom)
        out = np.empty(dom.shape, dtype=K.MASK_DTYPE)
        if cond.any():
            out[cond] = evaluate(spec.then, space, dom[cond])
        if (~cond).any():
            out[~cond] = evaluate(spec.otherwise, space, dom[~cond])
        return out
    if isinstance(spec, Table):
        table = {}
        for key, value in spec.mapping:
            k = space.mask(key)
            if not space.estar_flags[k]:
                raise TableKeyNotEstarOpen(
                    f"table key {space.fmt(k)} is not e*-open", {"key": space.names(k)}
                )
            table[k] = space.mask(value)
        out = np.empty(dom.shape, dtype=K.MASK_DTYPE)
        for i, v in enumerate(dom.tolist()):
            if v not in table:
                raise TableIncomplete(f"table has no entry for e*-open set {space.fmt(v)}", {"missing": space.names(v)})
            out[i] = table[v]
        return out
    raise TypeError(f"unknown operation spec {spec!r}")


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    """Truth value of a predicate plus the least failing witness, if any."""

    holds: bool
    witness: dict | None = None

    def __bool__(self):
        return self.holds


@dataclass(frozen=True, eq=False)
class BoundOperation:
    space: FiniteSpace
    spec: object
    images: np.ndarray  # image per mask, NO_IMAGE off the e*-open family
    name: str = ""

    def __repr__(self):
        return f"BoundOperation({self.name or self.spec!r})"

    def __eq__(self, other):
        if not isinstance(other, BoundOperation):
            return NotImplemented
        return self.space == other.space and np.array_equal(self.images, other.images)

    def __hash__(self):
        return hash((self.space, self.images.tobytes()))

    def image_map(self) -> dict[int, int]:
        return {int(v): int(self.images[v]) for v in self.space.estar_masks}

    @cached_property
    def point_images(self) -> tuple[np.ndarray, ...]:
        """Per point x: minimal members of {U^γ : U e*-open, x ∈ U}."""
        dom = self.space.estar_masks
        img = self.images[dom]
        return tuple(K.minimal_elements(img[(dom >> x) & 1 == 1]) for x in range(self.space.n))

    @cached_property
    def coverage(self) -> np.ndarray:
        """ok[x, A]: some e*-open U ∋ x has U^γ ⊆ A."""
        return K.coverage(self.space.n, self.point_images)

    @cached_property
    def single_open_flags(self) -> np.ndarray:
        return K.stable_family(self.space.n, self.coverage)

    @cached_property
    def single_interior_table(self) -> np.ndarray:
        a = np.arange(self.space.size, dtype=K.MASK_DTYPE)
        return K.subset_or(self.space.n, np.where(self.single_open_flags, a, 0))


def bind_operation(space: FiniteSpace, spec, name: str = "") -> BoundOperation:
    """Evaluate ``spec`` on every e*-open set of ``space`` and check V ⊆ V^γ."""
    dom = space.estar_masks
    img = evaluate(spec, space, dom)
    bad = np.flatnonzero((dom & ~img) != 0)
    if bad.size:
        v, w = int(dom[bad[0]]), int(img[bad[0]])
        raise NotExpansive(
            f"{space.fmt(v)} is not contained in its image {space.fmt(w)}",
            {"V": space.names(v), "image": space.names(w)},
        )
    images = np.full(space.size, NO_IMAGE, dtype=K.MASK_DTYPE)
    images[dom] = img
    images.setflags(write=False)
    return BoundOperation(space, spec, images, name)


def bind_table(space: FiniteSpace, images: dict, name: str = "") -> BoundOperation:
    return bind_operation(space, Table.from_masks(space, images), name)


def identity(space: FiniteSpace) -> BoundOperation:
    return bind_operation(space, Identity(), "id")


def constant_x(space: FiniteSpace) -> BoundOperation:
    return bind_operation(space, ConstantX(), "X")


def closure_op(space: FiniteSpace) -> BoundOperation:
    return bind_operation(space, ClosureOp(), "Cl")


def apply(op: BoundOperation, v: int) -> int:
    v = op.space.check(v)
    img = int(op.images[v])
    if img == NO_IMAGE:
        raise NotInDomain(f"{op.space.fmt(v)} is not e*-open", {"V": op.space.names(v)})
    return img


def is_estar_regular(op: BoundOperation) -> Verdict:
    """Any two e*-open neighbourhoods of x have γ-images refined by a third one's."""
    space = op.space
    dom = space.estar_masks
    for x in range(space.n):
        nbhd = dom[(dom >> x) & 1 == 1]
        distinct = np.unique(op.images[nbhd])
        meets = (distinct[:, None] & distinct[None, :]).ravel()
        if op.coverage[x][meets].all():
            continue
        imgs = op.images[nbhd]
        for i, u in enumerate(nbhd.tolist()):
            fails = ~op.coverage[x][imgs[i] & imgs]
            if fails.any():
                v = int(nbhd[np.argmax(fails)])
                return Verdict(False, {"x": space.points[x], "U": space.names(u), "V": space.names(v)})
    return Verdict(True)


def single_op_open_family(op: BoundOperation) -> SetFamily:
    """Sets A such that each x ∈ A has an e*-open U ∋ x with U^γ ⊆ A (plus ∅)."""
    return SetFamily.from_flags(op.space, op.single_open_flags, f"e*O_{op.name or 'γ'}")


def is_estar_open_operation(op: BoundOperation) -> Verdict:
    """Every U^γ contains, around each x ∈ U, a member of the single-operation family."""
    space = op.space
    for u in space.estar_masks.tolist():
        inner = int(op.single_interior_table[op.images[u]])
        missing = u & ~inner
        if missing:
            x = next(bits(missing))
            return Verdict(False, {"x": space.points[x], "U": space.names(u), "image": space.names(int(op.images[u]))})
    return Verdict(True)


def is_estar_gamma_regular_space(space: FiniteSpace, op: BoundOperation) -> Verdict:
    """Each e*-open V around x contains U^γ for some e*-open U around x."""
    if op.space != space:
        raise SpaceMismatch("operation is bound to a different space")
    dom = space.estar_masks
    for x in range(space.n):
        ach = op.point_images[x]
        for v in dom[(dom >> x) & 1 == 1].tolist():
            if not ((ach & ~v) == 0).any():
                return Verdict(False, {"x": space.points[x], "V": space.names(v)})
    return Verdict(True)
