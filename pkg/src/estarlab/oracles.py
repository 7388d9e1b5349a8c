"""Literal, loop-by-loop evaluations of the definitions.

Nothing here touches the kernels or the cached tables; every quantifier is
spelled out over plain ints.  These are slow and only meant as an
independent reference for the fast paths.
"""

from __future__ import annotations

from .space import FiniteSpace, bits


def _opens_around(space: FiniteSpace, x: int):
    return [u for u in sorted(space.opens) if u >> x & 1]


def interior_scan(space: FiniteSpace, a: int) -> int:
    r = 0
    for u in space.opens:
        if u & ~a == 0:
            r |= u
    return r


def closure_scan(space: FiniteSpace, a: int) -> int:
    disjoint = 0
    for u in space.opens:
        if u & a == 0:
            disjoint |= u
    return space.full & ~disjoint


def delta_closure_literal(space: FiniteSpace, a: int) -> int:
    r = 0
    for x in range(space.n):
        if all(interior_scan(space, closure_scan(space, u)) & a for u in _opens_around(space, x)):
            r |= 1 << x
    return r


def delta_interior_literal(space: FiniteSpace, a: int) -> int:
    r = 0
    for x in range(space.n):
        if any(interior_scan(space, closure_scan(space, u)) & ~a == 0 for u in _opens_around(space, x)):
            r |= 1 << x
    return r


def estar_family_literal(space: FiniteSpace) -> list[int]:
    out = []
    for a in range(space.size):
        hull = closure_scan(space, interior_scan(space, delta_closure_literal(space, a)))
        if a & ~hull == 0:
            out.append(a)
    return out


def estar_closure_literal(space: FiniteSpace, a: int) -> int:
    fam = set(estar_family_literal(space))
    r = space.full
    for f in range(space.size):
        if (space.full & ~f) in fam and a & ~f == 0:
            r &= f
    return r


def _estar_around(op, x):
    dom = [int(v) for v in op.space.estar_masks]
    return [v for v in dom if v >> x & 1]


def single_open_literal(op, a: int) -> bool:
    for x in bits(a):
        if not any(int(op.images[u]) & ~a == 0 for u in _estar_around(op, x)):
            return False
    return True


def is_biopen_literal(ctx, a: int) -> bool:
    """Every point of A has e*-open U, V around it with U^γ ∩ V^γ′ ⊆ A (∅ by convention)."""
    g, gp = ctx.gamma.images, ctx.gamma_prime.images
    for x in bits(a):
        around = _estar_around(ctx.gamma, x)
        found = False
        for u in around:
            for v in around:
                if int(g[u]) & int(gp[v]) & ~a == 0:
                    found = True
                    break
            if found:
                break
        if not found:
            return False
    return True


def pointwise_closure_literal(ctx, a: int) -> int:
    g, gp = ctx.gamma.images, ctx.gamma_prime.images
    r = 0
    for x in range(ctx.space.n):
        around = _estar_around(ctx.gamma, x)
        if all(int(g[u]) & int(gp[w]) & a for u in around for w in around):
            r |= 1 << x
    return r


def biopen_family_literal(ctx) -> list[int]:
    return [a for a in range(ctx.space.size) if is_biopen_literal(ctx, a)]


def lattice_closure_by_neighbourhoods(ctx, a: int, family=None) -> int:
    """Points whose every bi-open neighbourhood meets A."""
    family = biopen_family_literal(ctx) if family is None else family
    r = 0
    for x in range(ctx.space.n):
        if all(v & a for v in family if v >> x & 1):
            r |= 1 << x
    return r


def bi_continuous_literal(f, ctx_dom, ctx_cod, strict: bool = False) -> bool:
    g = ctx_dom.gamma.images
    gp = ctx_dom.gamma.images if strict else ctx_dom.gamma_prime.images
    b, bp = ctx_cod.gamma.images, ctx_cod.gamma_prime.images
    for x in range(ctx_dom.space.n):
        y = f.table[x]
        dom_around = _estar_around(ctx_dom.gamma, x)
        cod_around = _estar_around(ctx_cod.gamma, y)
        for w in cod_around:
            for s in cod_around:
                target = int(b[w]) & int(bp[s])
                ok = False
                for u in dom_around:
                    for v in dom_around:
                        img = 0
                        for p in bits(int(g[u]) & int(gp[v])):
                            img |= 1 << f.table[p]
                        if img & ~target == 0:
                            ok = True
                            break
                    if ok:
                        break
                if not ok:
                    return False
    return True
