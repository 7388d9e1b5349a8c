"""Functions between finite spaces and bi-operational continuity."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _kernels as K
from .bioperations import BiopContext
from .operations import Verdict
from .space import FiniteSpace, SpaceMismatch, UnknownPoint


class PreconditionViolated(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteFunction:
    domain: FiniteSpace
    codomain: FiniteSpace
    table: tuple[int, ...]  # image index of each domain point
    name: str = ""

    def __post_init__(self):
        table = tuple(int(t) for t in self.table)
        object.__setattr__(self, "table", table)
        if len(table) != self.domain.n:
            raise ValueError(f"function table has {len(table)} entries for {self.domain.n} points")
        for t in table:
            if not 0 <= t < self.codomain.n:
                raise UnknownPoint(f"image index {t} is not a codomain point")

    @classmethod
    def from_names(cls, domain: FiniteSpace, codomain: FiniteSpace, mapping: dict, name: str = "") -> "FiniteFunction":
        missing = [p for p in domain.points if p not in mapping]
        if missing:
            raise ValueError(f"function is not defined at {missing}")
        extra = [p for p in mapping if p not in domain._index]
        if extra:
            raise UnknownPoint(f"function table names unknown domain points {extra}")
        return cls(domain, codomain, tuple(codomain.index(mapping[p]) for p in domain.points), name)

    def __eq__(self, other):
        if not isinstance(other, FiniteFunction):
            return NotImplemented
        return (self.domain, self.codomain, self.table) == (other.domain, other.codomain, other.table)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.table))

    def __call__(self, point):
        return self.codomain.points[self.table[self.domain.index(point)]]

    def as_names(self) -> dict[str, str]:
        return {p: self.codomain.points[t] for p, t in zip(self.domain.points, self.table)}

    @cached_property
    def image_table(self) -> np.ndarray:
        return K.image_table(self.domain.n, self.table)

    @cached_property
    def preimage_table(self) -> np.ndarray:
        return K.preimage_table(self.codomain.n, self.table)

    @property
    def is_bijective(self) -> bool:
        return self.domain.n == self.codomain.n and len(set(self.table)) == len(self.table)

    def inverse(self) -> "FiniteFunction":
        if not self.is_bijective:
            raise ValueError("function is not bijective")
        inv = [0] * self.codomain.n
        for x, y in enumerate(self.table):
            inv[y] = x
        return FiniteFunction(self.codomain, self.domain, tuple(inv), f"{self.name}⁻¹" if self.name else "")


def identity_map(space: FiniteSpace) -> FiniteFunction:
    return FiniteFunction(space, space, tuple(range(space.n)), "id")


def image(f: FiniteFunction, a: int) -> int:
    return int(f.image_table[f.domain.check(a)])


def preimage(f: FiniteFunction, b: int) -> int:
    return int(f.preimage_table[f.codomain.check(b)])


def compose(f: FiniteFunction, g: FiniteFunction) -> FiniteFunction:
    """g ∘ f (apply f first)."""
    if f.codomain != g.domain:
        raise SpaceMismatch("codomain of f differs from domain of g")
    name = f"{g.name}∘{f.name}" if f.name and g.name else ""
    return FiniteFunction(f.domain, g.codomain, tuple(g.table[t] for t in f.table), name)


def _check_spaces(f: FiniteFunction, ctx_dom: BiopContext, ctx_cod: BiopContext) -> None:
    if ctx_dom.space != f.domain:
        raise SpaceMismatch("domain context is bound to a different space than the function's domain")
    if ctx_cod.space != f.codomain:
        raise SpaceMismatch("codomain context is bound to a different space than the function's codomain")


def _domain_reach(ctx_dom: BiopContext, strict: bool):
    if not strict:
        return ctx_dom.reach
    # the literal reading applies γ to both neighbourhoods
    g = ctx_dom.gamma.point_images
    return tuple(K.meet_antichain(g[x], g[x]) for x in range(ctx_dom.space.n))


def is_bi_continuous(f: FiniteFunction, ctx_dom: BiopContext, ctx_cod: BiopContext, strict: bool = False) -> Verdict:
    """Every reach set W^β ∩ S^β′ of f(x) contains f of some reach set U^γ ∩ V^γ′ of x.

    ``strict=True`` uses U^γ ∩ V^γ on the domain side instead.
    """
    _check_spaces(f, ctx_dom, ctx_cod)
    X, Y = f.domain, f.codomain
    reach = _domain_reach(ctx_dom, strict)
    for x in range(X.n):
        y = f.table[x]
        images = f.image_table[reach[x]]
        if all(((images & ~r) == 0).any() for r in ctx_cod.reach[y]):
            continue
        dom = Y.estar_masks
        around = dom[(dom >> y) & 1 == 1]
        b, bp = ctx_cod.gamma.images, ctx_cod.gamma_prime.images
        for w in around.tolist():
            for s in around.tolist():
                target = int(b[w]) & int(bp[s])
                if not ((images & ~target) == 0).any():
                    return Verdict(False, {
                        "x": X.points[x], "f(x)": Y.points[y],
                        "W": Y.names(w), "S": Y.names(s), "W^β∩S^β′": Y.names(target),
                    })
    return Verdict(True)


def _first(flags: np.ndarray):
    idx = np.flatnonzero(flags)
    return int(idx[0]) if idx.size else None


@dataclass(frozen=True)
class ContinuityVerdict:
    c1: bool
    c2: bool
    c3: bool
    c4: bool
    c5: bool
    c6: bool
    c7: bool
    witnesses: dict = field(default_factory=dict)

    @property
    def vector(self) -> tuple[bool, ...]:
        return (self.c1, self.c2, self.c3, self.c4, self.c5, self.c6, self.c7)

    def as_dict(self) -> dict:
        out = {f"c{i}": v for i, v in enumerate(self.vector, start=1)}
        out["witnesses"] = {k: self.witnesses[k] for k in sorted(self.witnesses)}
        return out


def continuity_conditions(f: FiniteFunction, ctx_dom: BiopContext, ctx_cod: BiopContext, strict: bool = False) -> ContinuityVerdict:
    _check_spaces(f, ctx_dom, ctx_cod)
    X, Y = f.domain, f.codomain
    img, pre = f.image_table, f.preimage_table
    wit = {}

    v1 = is_bi_continuous(f, ctx_dom, ctx_cod, strict)
    if not v1:
        wit["c1"] = v1.witness

    ax = np.arange(X.size)
    by = np.arange(Y.size)

    lhs, rhs = img[ctx_dom.pointwise_table[ax]], ctx_cod.pointwise_table[img[ax]]
    a = _first((lhs & ~rhs) != 0)
    if a is not None:
        wit["c2"] = {"A": X.names(a), "f(cl A)": Y.names(int(lhs[a])), "cl f(A)": Y.names(int(rhs[a]))}

    lhs3, rhs3 = ctx_dom.pointwise_table[pre[by]], pre[ctx_cod.pointwise_table[by]]
    b = _first((lhs3 & ~rhs3) != 0)
    if b is not None:
        wit["c3"] = {"B": Y.names(b), "cl f⁻¹(B)": X.names(int(lhs3[b])), "f⁻¹(cl B)": X.names(int(rhs3[b]))}

    b = _first(ctx_cod.biclosed_flags & ~ctx_dom.biclosed_flags[pre[by]])
    if b is not None:
        wit["c4"] = {"B": Y.names(b), "f⁻¹(B)": X.names(int(pre[b]))}

    lhs5, rhs5 = img[ctx_dom.lattice_table[ax]], ctx_cod.lattice_table[img[ax]]
    a = _first((lhs5 & ~rhs5) != 0)
    if a is not None:
        wit["c5"] = {"A": X.names(a), "f(Cl A)": Y.names(int(lhs5[a])), "Cl f(A)": Y.names(int(rhs5[a]))}

    b = _first(ctx_cod.biopen_flags & ~ctx_dom.biopen_flags[pre[by]])
    if b is not None:
        wit["c6"] = {"V": Y.names(b), "f⁻¹(V)": X.names(int(pre[b]))}

    dom_open = np.flatnonzero(ctx_dom.biopen_flags)
    cod_open = np.flatnonzero(ctx_cod.biopen_flags)
    for x in range(X.n):
        y = f.table[x]
        cand = img[dom_open[(dom_open >> x) & 1 == 1]]
        for w in cod_open[(cod_open >> y) & 1 == 1].tolist():
            if not ((cand & ~w) == 0).any():
                wit["c7"] = {"x": X.points[x], "W": Y.names(w)}
                break
        if "c7" in wit:
            break

    flags = {f"c{i}": f"c{i}" not in wit for i in range(1, 8)}
    return ContinuityVerdict(witnesses=wit, **flags)


def is_bi_closed_map(f: FiniteFunction, ctx_dom: BiopContext, ctx_cod: BiopContext) -> Verdict:
    """Images of bi-closed sets are bi-closed."""
    _check_spaces(f, ctx_dom, ctx_cod)
    ax = np.arange(f.domain.size)
    a = _first(ctx_dom.biclosed_flags & ~ctx_cod.biclosed_flags[f.image_table[ax]])
    if a is None:
        return Verdict(True)
    return Verdict(False, {"A": f.domain.names(a), "f(A)": f.codomain.names(int(f.image_table[a]))})


def closed_map_neighborhood_property(f: FiniteFunction, ctx_dom: BiopContext, ctx_cod: BiopContext, b: int, u: int) -> int:
    """For bi-closed f, the bi-open V = Y \\ f(X \\ U) satisfies B ⊆ V and f⁻¹(V) ⊆ U."""
    _check_spaces(f, ctx_dom, ctx_cod)
    X, Y = f.domain, f.codomain
    b, u = Y.check(b), X.check(u)
    if not is_bi_closed_map(f, ctx_dom, ctx_cod):
        raise PreconditionViolated("function is not bi-closed")
    if not ctx_dom.biopen_flags[u]:
        raise PreconditionViolated(f"{X.fmt(u)} is not bi-open")
    if preimage(f, b) & ~u:
        raise PreconditionViolated(f"f⁻¹({Y.fmt(b)}) is not contained in {X.fmt(u)}")
    v = Y.full & ~image(f, X.full & ~u)
    assert b & ~v == 0, "B ⊄ V"
    assert preimage(f, v) & ~u == 0, "f⁻¹(V) ⊄ U"
    assert ctx_cod.biopen_flags[v], "V is not bi-open"
    return v


def strict_reading_differs(f: FiniteFunction, ctx_dom: BiopContext, ctx_cod: BiopContext) -> bool:
    return bool(is_bi_continuous(f, ctx_dom, ctx_cod)) != bool(is_bi_continuous(f, ctx_dom, ctx_cod, strict=True))


__all__ = [
    "ContinuityVerdict", "FiniteFunction", "PreconditionViolated", "closed_map_neighborhood_property",
    "compose", "continuity_conditions", "identity_map", "image", "is_bi_closed_map", "is_bi_continuous",
    "preimage", "strict_reading_differs",
]
