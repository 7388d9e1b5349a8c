"""Finite topological spaces and the classical operator tower.

Subsets are plain ``int`` bitmasks: bit ``i`` stands for ``space.points[i]``.
All operators are precomputed as tables over the whole power set, so a
query like ``closure(space, A)`` is a single array lookup.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

import numpy as np

from . import _kernels as K

MAX_POINTS = 16


class SpaceError(ValueError):
    """Invalid point set, subset, or topology."""


class WidthExceeded(SpaceError):
    pass


class DuplicatePoint(SpaceError):
    pass


class UnknownPoint(SpaceError):
    pass


class NotATopology(SpaceError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness or {}


class SpaceMismatch(ValueError):
    """Objects bound to different spaces were combined."""


# ---------------------------------------------------------------------------
# mask helpers


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits of ``mask``, ascending."""
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def complement(space: "FiniteSpace", mask: int) -> int:
    return space.full & ~mask


# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """A finite ground set with a validated topology.

    Use :func:`validate_topology` to build one from point names; the
    constructor takes masks directly and re-checks the topology axioms.
    """

    points: tuple[str, ...]
    opens: frozenset[int]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_points(self.points)
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "opens", frozenset(int(o) for o in self.opens))
        object.__setattr__(self, "_index", {p: i for i, p in enumerate(self.points)})
        for o in self.opens:
            if o < 0 or o & ~self.full:
                raise SpaceError(f"open set mask {o:#x} does not fit {self.n} points")
        _check_topology(self)

    def __eq__(self, other):
        if not isinstance(other, FiniteSpace):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self):
        return hash((self.points, self.opens))

    def __repr__(self):
        opens = ", ".join(self.fmt(o) for o in self.open_list)
        return f"FiniteSpace(points={list(self.points)}, opens=[{opens}])"

    # -- basic geometry -----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def full(self) -> int:
        return (1 << len(self.points)) - 1

    @property
    def size(self) -> int:
        return 1 << len(self.points)

    @cached_property
    def open_list(self) -> tuple[int, ...]:
        return tuple(sorted(self.opens))

    def index(self, point) -> int:
        if isinstance(point, (int, np.integer)) and not isinstance(point, bool):
            if not 0 <= point < self.n:
                raise UnknownPoint(f"point index {point} out of range")
            return int(point)
        try:
            return self._index[point]
        except KeyError:
            raise UnknownPoint(f"unknown point {point!r}") from None

    def mask(self, names: Iterable[str]) -> int:
        """Mask of a collection of point names."""
        if isinstance(names, str):
            raise TypeError("expected a collection of point names, got a string")
        m = 0
        for p in names:
            m |= 1 << self.index(p)
        return m

    def names(self, mask: int) -> list[str]:
        return [self.points[i] for i in bits(mask)]

    def fmt(self, mask: int) -> str:
        return "{" + ",".join(self.names(mask)) + "}"

    def check(self, mask: int) -> int:
        mask = int(mask)
        if mask < 0 or mask & ~self.full:
            raise SpaceError(f"mask {mask:#x} does not fit {self.n} points")
        return mask

    # -- operator tables ----------------------------------------------------

    @cached_property
    def neighborhoods(self) -> np.ndarray:
        """Smallest open set around each point."""
        nb = np.full(self.n, self.full, dtype=K.MASK_DTYPE)
        for o in self.opens:
            for x in bits(o):
                nb[x] &= o
        return nb

    @cached_property
    def _int_cl(self):
        return K.pointwise_tables(self.n, self.neighborhoods)

    @property
    def interior_table(self) -> np.ndarray:
        return self._int_cl[0]

    @property
    def closure_table(self) -> np.ndarray:
        return self._int_cl[1]

    @cached_property
    def regular_neighborhoods(self) -> np.ndarray:
        """Int(Cl(U_x)) for the smallest open U_x around each point."""
        return self.interior_table[self.closure_table[self.neighborhoods]]

    @cached_property
    def _delta(self):
        return K.pointwise_tables(self.n, self.regular_neighborhoods)

    @property
    def delta_interior_table(self) -> np.ndarray:
        return self._delta[0]

    @property
    def delta_closure_table(self) -> np.ndarray:
        return self._delta[1]

    @cached_property
    def estar_flags(self) -> np.ndarray:
        a = np.arange(self.size, dtype=K.MASK_DTYPE)
        hull = self.closure_table[self.interior_table[self.delta_closure_table]]
        return (a & ~hull) == 0

    @cached_property
    def estar_masks(self) -> np.ndarray:
        return np.flatnonzero(self.estar_flags).astype(K.MASK_DTYPE)

    @cached_property
    def estar_interior_table(self) -> np.ndarray:
        a = np.arange(self.size, dtype=K.MASK_DTYPE)
        return K.subset_or(self.n, np.where(self.estar_flags, a, 0))

    @cached_property
    def estar_closure_table(self) -> np.ndarray:
        a = np.arange(self.size, dtype=K.MASK_DTYPE)
        closed = self.estar_flags[self.full & ~a]
        return K.superset_and(self.n, np.where(closed, a, self.full))

    def is_open(self, mask: int) -> bool:
        return mask in self.opens

    def is_estar_open(self, mask: int) -> bool:
        return bool(self.estar_flags[self.check(mask)])


@dataclass(frozen=True, eq=False)
class SetFamily:
    """A labelled family of subsets of one space, iterated in ascending mask order."""

    space: FiniteSpace
    members: frozenset[int]
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(int(m) for m in self.members))
        for m in self.members:
            self.space.check(m)

    @classmethod
    def from_flags(cls, space: FiniteSpace, flags: np.ndarray, label: str = "") -> "SetFamily":
        return cls(space, frozenset(np.flatnonzero(flags).tolist()), label)

    @cached_property
    def ordered(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def __contains__(self, mask) -> bool:
        return int(mask) in self.members

    def __iter__(self):
        return iter(self.ordered)

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        if isinstance(other, SetFamily):
            return self.space == other.space and self.members == other.members
        return NotImplemented

    def __hash__(self):
        return hash((self.space, self.members))

    def __le__(self, other: "SetFamily") -> bool:
        return self.members <= other.members

    def names(self) -> list[list[str]]:
        return [self.space.names(m) for m in self.ordered]

    def __repr__(self):
        body = ", ".join(self.space.fmt(m) for m in self.ordered)
        return f"SetFamily({self.label or '?'}: [{body}])"


# ---------------------------------------------------------------------------
# construction


def _check_points(points) -> None:
    points = list(points)
    if not points:
        raise SpaceError("a space needs at least one point")
    if len(points) > MAX_POINTS:
        raise WidthExceeded(f"{len(points)} points exceed the limit of {MAX_POINTS}")
    seen = set()
    for p in points:
        if not isinstance(p, str) or not p:
            raise SpaceError(f"point names must be non-empty strings, got {p!r}")
        if p in seen:
            raise DuplicatePoint(f"duplicate point {p!r}")
        seen.add(p)


def generated_opens(n: int, family: Iterable[int]) -> frozenset[int]:
    """Smallest topology on n points containing ``family``."""
    full = (1 << n) - 1
    nb = np.full(n, full, dtype=K.MASK_DTYPE)
    for s in family:
        for x in bits(s):
            nb[x] &= s
    inside, _ = K.pointwise_tables(n, nb)
    return frozenset(np.flatnonzero(inside == np.arange(1 << n)).tolist())


def _check_topology(space: FiniteSpace) -> None:
    opens, full = space.opens, space.full
    if 0 not in opens:
        raise NotATopology("∅ is missing from the open sets", {"missing": []})
    if full not in opens:
        raise NotATopology("X is missing from the open sets", {"missing": space.names(full)})
    gen = generated_opens(space.n, opens)
    if gen == opens:
        return
    # the family is a topology iff it equals the topology it generates;
    # otherwise locate a concrete pair whose meet or join escapes
    for x in range(space.n):
        cur = full
        for o in sorted(opens):
            if o >> x & 1 and (cur & o) != cur:
                if cur & o not in opens:
                    _fail(space, "∩", cur, o)
                cur &= o
    missing = min(gen - opens)
    cur = 0
    for x in bits(missing):
        nb = int(space.neighborhoods[x])
        if cur | nb not in opens:
            _fail(space, "∪", cur, nb)
        cur |= nb
    raise NotATopology(f"family is not a topology: {space.fmt(missing)} missing")  # pragma: no cover


def _fail(space, op, a, b):
    res = a & b if op == "∩" else a | b
    raise NotATopology(
        f"A{op}B ∉ τ for A={space.fmt(a)}, B={space.fmt(b)}",
        {"op": op, "A": space.names(a), "B": space.names(b), "result": space.names(res)},
    )


def validate_topology(points, candidate_opens, complete: bool = False) -> FiniteSpace:
    """Build a space from point names and a family of subsets (lists of names).

    With ``complete=True`` the family is replaced by the smallest topology
    containing it instead of being rejected.
    """
    points = tuple(points)
    _check_points(points)
    index = {p: i for i, p in enumerate(points)}
    masks = set()
    for s in candidate_opens:
        m = 0
        for p in s:
            if p not in index:
                raise UnknownPoint(f"unknown point {p!r} in open set {list(s)}")
            m |= 1 << index[p]
        masks.add(m)
    if complete:
        masks = generated_opens(len(points), masks)
    return FiniteSpace(points, frozenset(masks))


def discrete(points) -> FiniteSpace:
    points = tuple(points)
    return FiniteSpace(points, frozenset(range(1 << len(points))))


def indiscrete(points) -> FiniteSpace:
    points = tuple(points)
    return FiniteSpace(points, frozenset({0, (1 << len(points)) - 1}))


# ---------------------------------------------------------------------------
# operators


def interior(space: FiniteSpace, a: int) -> int:
    return int(space.interior_table[space.check(a)])


def closure(space: FiniteSpace, a: int) -> int:
    return int(space.closure_table[space.check(a)])


def delta_interior(space: FiniteSpace, a: int) -> int:
    """Points with some open neighbourhood U whose Int(Cl(U)) lies inside ``a``."""
    return int(space.delta_interior_table[space.check(a)])


def delta_closure(space: FiniteSpace, a: int) -> int:
    """Points all of whose open neighbourhoods U have Int(Cl(U)) meeting ``a``."""
    return int(space.delta_closure_table[space.check(a)])


def is_regular_open(space: FiniteSpace, a: int) -> bool:
    a = space.check(a)
    return int(space.interior_table[space.closure_table[a]]) == a


def estar_open_family(space: FiniteSpace) -> SetFamily:
    return SetFamily.from_flags(space, space.estar_flags, "e*O")


def estar_closed_family(space: FiniteSpace) -> SetFamily:
    a = np.arange(space.size)
    return SetFamily.from_flags(space, space.estar_flags[space.full & ~a], "e*C")


def estar_closure(space: FiniteSpace, a: int) -> int:
    """Intersection of all e*-closed supersets of ``a``."""
    return int(space.estar_closure_table[space.check(a)])


def estar_interior(space: FiniteSpace, a: int) -> int:
    return int(space.estar_interior_table[space.check(a)])
