"""Registry of executable claims about bioperations.

Each claim inspects one :class:`Instance` and returns ``None`` when the claim
holds there, :data:`VACUOUS` when its hypothesis is false, or a witness dict
describing the least failing data.  Claims of kind ``hard`` have
constructive proofs and must never fail; claims of kind ``audit`` are
audited and their counterexamples are reported as findings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .. import oracles
from ..bioperations import BiopContext, is_biop_regular_space
from ..morphisms import compose, continuity_conditions, is_bi_closed_map, is_bi_continuous
from ..operations import (
    constant_x,
    identity,
    is_estar_gamma_regular_space,
    is_estar_open_operation,
    is_estar_regular,
)
from ..space import FiniteSpace

HARD = "hard"
AUDIT = "audit"
VACUOUS = "vacuous"

PAIR_LIMIT = 256  # subsets; beyond this, pair-quantified laws use a fixed sample


@dataclass(frozen=True)
class Claim:
    id: str
    kind: str
    scope: str  # "space" | "pair" | "function" | "triple"
    statement: str
    check: Callable
    conditional: bool = False


REGISTRY: dict[str, Claim] = {}


def claim(id, kind, scope, statement, conditional=False):
    def deco(fn):
        if id in REGISTRY:
            raise ValueError(f"duplicate claim id {id}")
        REGISTRY[id] = Claim(id, kind, scope, statement, fn, conditional)
        return fn
    return deco


def get(claim_id: str) -> Claim:
    try:
        return REGISTRY[claim_id]
    except KeyError:
        raise UnknownClaim(claim_id) from None


class UnknownClaim(KeyError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _arange(space: FiniteSpace) -> np.ndarray:
    return np.arange(space.size, dtype=np.int64)


def _pairs(space: FiniteSpace) -> tuple[np.ndarray, np.ndarray]:
    if space.size <= PAIR_LIMIT:
        a = np.repeat(_arange(space), space.size)
        b = np.tile(_arange(space), space.size)
        return a, b
    rng = np.random.default_rng(0)
    return rng.integers(0, space.size, 1 << 16), rng.integers(0, space.size, 1 << 16)


def _first(flags) -> int | None:
    idx = np.flatnonzero(flags)
    return int(idx[0]) if idx.size else None


def _set(space, m) -> list[str]:
    return space.names(int(m))


def _fail_at(space, a, **extra) -> dict:
    w = {"A": _set(space, a)}
    w.update({k: (_set(space, v) if isinstance(v, (int, np.integer)) and not isinstance(v, (bool, np.bool_)) else v) for k, v in extra.items()})
    return w


def _memo(inst, key, fn):
    facts = inst.facts
    if key not in facts:
        facts[key] = fn()
    return facts[key]


def _regular_pair(inst) -> bool:
    return _memo(inst, "regular_pair", lambda: bool(is_estar_regular(inst.gamma)) and bool(is_estar_regular(inst.gamma_prime)))


def _open_pair(inst, ctx=None) -> bool:
    ctx = ctx or inst.ctx
    return _memo(inst, ("open_pair", id(ctx)),
                 lambda: bool(is_estar_open_operation(ctx.gamma)) and bool(is_estar_open_operation(ctx.gamma_prime)))


def _single_regular(inst, op) -> bool:
    return _memo(inst, ("single_regular", id(op)), lambda: bool(is_estar_gamma_regular_space(inst.space, op)))


def _biop_regular(inst, ctx) -> bool:
    return _memo(inst, ("biop_regular", id(ctx)), lambda: bool(is_biop_regular_space(ctx)))


def _closed_under(flags, op):
    fam = np.flatnonzero(flags)
    res = op(fam[:, None], fam[None, :])
    bad = ~flags[res]
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return int(fam[i]), int(fam[j]), int(res[i, j])
    return None


def _single_pointwise(op) -> np.ndarray:
    """{x : every e*-open U ∋ x has U^γ meeting A}, straight from the γ-coverage table."""
    space = op.space
    comp = space.full & ~_arange(space)
    out = np.zeros(space.size, dtype=np.int64)
    for x in range(space.n):
        out |= np.where(op.coverage[x][comp], 0, 1 << x)
    return out


def _single_lattice(op) -> np.ndarray:
    space = op.space
    a = _arange(space)
    closed = op.single_open_flags[space.full & ~a]
    out = np.empty(space.size, dtype=np.int64)
    closed_sets = a[closed]
    for s in range(space.size):
        sup = closed_sets[(s & ~closed_sets) == 0]
        out[s] = np.bitwise_and.reduce(sup) if sup.size else space.full
    return out


# ---------------------------------------------------------------------------
# space-level claims


@claim("estar-union-closed", HARD, "space", "The e*-open family is closed under unions.")
def _estar_union(inst):
    w = _closed_under(inst.space.estar_flags, np.bitwise_or)
    if w:
        return {"U": _set(inst.space, w[0]), "V": _set(inst.space, w[1])}


@claim("estar-tower", HARD, "space",
       "Every regular open set is open, every open set is e*-open, and the δ-operators are complement-dual.")
def _tower(inst):
    s = inst.space
    a = _arange(s)
    reg = s.interior_table[s.closure_table[a]] == a
    bad = _first(reg & ~np.isin(a, list(s.opens)))
    if bad is not None:
        return _fail_at(s, bad, reason="regular open but not open")
    for o in s.open_list:
        if not s.estar_flags[o]:
            return _fail_at(s, o, reason="open but not e*-open")
    dual = s.full & ~s.delta_closure_table[s.full & ~a]
    bad = _first(dual != s.delta_interior_table)
    if bad is not None:
        return _fail_at(s, bad, reason="δ-interior is not the dual of δ-closure")


@claim("identity-pair-estar", AUDIT, "space",
       "With γ = γ′ = id the bi-open family equals the e*-open family.")
def _id_pair(inst):
    s = inst.space
    fl = BiopContext(s, identity(s), identity(s)).biopen_flags
    bad = _first(fl != s.estar_flags)
    if bad is not None:
        return _fail_at(s, bad, biopen=bool(fl[bad]), estar_open=bool(s.estar_flags[bad]))


@claim("identity-single-estar", HARD, "space",
       "The single-operation family of id equals the e*-open family.")
def _id_single(inst):
    s = inst.space
    fl = identity(s).single_open_flags
    bad = _first(fl != s.estar_flags)
    if bad is not None:
        return _fail_at(s, bad)


@claim("extreme-ops-estar-open", HARD, "space", "id and the constant-X operation are e*-open operations.")
def _extreme_open(inst):
    s = inst.space
    for op in (identity(s), constant_x(s)):
        v = is_estar_open_operation(op)
        if not v:
            return {"operation": op.name, **v.witness}


# ---------------------------------------------------------------------------
# pair-level claims: families


@claim("biopen-union", HARD, "pair", "Unions of bi-open sets are bi-open.")
def _biopen_union(inst):
    w = _closed_under(inst.ctx.biopen_flags, np.bitwise_or)
    if w:
        return {"A": _set(inst.space, w[0]), "B": _set(inst.space, w[1]), "A∪B": _set(inst.space, w[2])}


@claim("biopen-meet-regular", HARD, "pair",
       "If γ and γ′ are e*-regular, intersections of two bi-open sets are bi-open.", conditional=True)
def _biopen_meet(inst):
    if not _regular_pair(inst):
        return VACUOUS
    w = _closed_under(inst.ctx.biopen_flags, np.bitwise_and)
    if w:
        return {"A": _set(inst.space, w[0]), "B": _set(inst.space, w[1]), "A∩B": _set(inst.space, w[2])}


@claim("biopen-topology-regular", HARD, "pair",
       "If γ and γ′ are e*-regular, the bi-open family is a topology.", conditional=True)
def _biopen_topology(inst):
    if not _regular_pair(inst):
        return VACUOUS
    fl = inst.ctx.biopen_flags
    if not (fl[0] and fl[inst.space.full]):
        return {"reason": "∅ or X is not bi-open"}
    for op, name in ((np.bitwise_or, "∪"), (np.bitwise_and, "∩")):
        w = _closed_under(fl, op)
        if w:
            return {"op": name, "A": _set(inst.space, w[0]), "B": _set(inst.space, w[1])}


@claim("biopen-local", HARD, "pair",
       "A is bi-open iff each of its points lies in a bi-open subset of A.")
def _biopen_local(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    bad = _first(ctx.biopen_flags != (ctx.interior_table == a))
    if bad is not None:
        return _fail_at(s, bad)


@claim("biopen-in-estar", AUDIT, "pair", "Every bi-open set is e*-open.")
def _biopen_in_estar(inst):
    s = inst.space
    bad = _first(inst.ctx.biopen_flags & ~s.estar_flags)
    if bad is not None:
        return _fail_at(s, bad)


@claim("classic-in-biopen", HARD, "pair",
       "A set that is bi-open using open neighbourhoods only is bi-open.")
def _classic(inst):
    bad = _first(inst.ctx.classic_biopen_flags & ~inst.ctx.biopen_flags)
    if bad is not None:
        return _fail_at(inst.space, bad)


@claim("single-meet-biopen", HARD, "pair",
       "A e*_γ-open and B e*_γ′-open imply A ∩ B bi-open.")
def _single_meet(inst):
    s = inst.space
    fa = np.flatnonzero(inst.gamma.single_open_flags)
    fb = np.flatnonzero(inst.gamma_prime.single_open_flags)
    meet = fa[:, None] & fb[None, :]
    bad = ~inst.ctx.biopen_flags[meet]
    if bad.any():
        i, j = np.argwhere(bad)[0]
        return {"A": _set(s, fa[i]), "B": _set(s, fb[j])}


@claim("single-in-biopen", HARD, "pair", "Every e*_γ-open set is bi-open, whatever γ′ is.")
def _single_in(inst):
    bad = _first(inst.gamma.single_open_flags & ~inst.ctx.biopen_flags)
    if bad is not None:
        return _fail_at(inst.space, bad)


@claim("constx-reduction", HARD, "pair",
       "With γ′ = X the bi-open sets are exactly the e*_γ-open sets.")
def _constx(inst):
    bad = _first(inst.ctx_gamma_x.biopen_flags != inst.gamma.single_open_flags)
    if bad is not None:
        return _fail_at(inst.space, bad)


@claim("single-regular-iff", AUDIT, "pair",
       "The space is e*_γ-regular iff the e*-open and e*_γ-open families coincide (checked for γ and γ′).")
def _single_regular_iff(inst):
    s = inst.space
    for label, op in (("γ", inst.gamma), ("γ′", inst.gamma_prime)):
        lhs = _single_regular(inst, op)
        rhs = bool(np.array_equal(op.single_open_flags, s.estar_flags))
        if lhs != rhs:
            return {"operation": label, "regular": lhs, "families_equal": rhs}


@claim("single-regular-opens", HARD, "pair",
       "If the space is e*_γ-regular, every open set is e*_γ-open.", conditional=True)
def _single_regular_opens(inst):
    if not _single_regular(inst, inst.gamma):
        return VACUOUS
    for o in inst.space.open_list:
        if not inst.gamma.single_open_flags[o]:
            return _fail_at(inst.space, o)


@claim("biop-regular-iff", AUDIT, "pair",
       "The space is e*_[γ,γ′]-regular iff the e*-open and bi-open families coincide.")
def _biop_regular_iff(inst):
    s = inst.space
    lhs = _biop_regular(inst, inst.ctx)
    rhs = bool(np.array_equal(inst.ctx.biopen_flags, s.estar_flags))
    if lhs != rhs:
        diff = _first(inst.ctx.biopen_flags != s.estar_flags)
        w = {"regular": lhs, "families_equal": rhs}
        if diff is not None:
            w["A"] = _set(s, diff)
        return w


@claim("biop-regular-constx", HARD, "pair", "The space is [γ,X]-regular iff it is e*_γ-regular.")
def _biop_regular_constx(inst):
    lhs = _biop_regular(inst, inst.ctx_gamma_x)
    rhs = _single_regular(inst, inst.gamma)
    if lhs != rhs:
        return {"bi_regular": lhs, "single_regular": rhs}


@claim("biop-regular-from-single", HARD, "pair",
       "e*_γ-regular and e*_γ′-regular together imply e*_[γ,γ′]-regular.", conditional=True)
def _biop_regular_single(inst):
    if not (_single_regular(inst, inst.gamma) and _single_regular(inst, inst.gamma_prime)):
        return VACUOUS
    if not _biop_regular(inst, inst.ctx):
        return dict(is_biop_regular_space(inst.ctx).witness)


# ---------------------------------------------------------------------------
# pair-level claims: closures and interiors


@claim("lattice-membership", HARD, "pair",
       "x lies in the lattice bi-closure of A iff every bi-open set around x meets A.")
def _lattice_membership(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    fam = np.flatnonzero(ctx.biopen_flags)
    alt = np.zeros(s.size, dtype=np.int64)
    for x in range(s.n):
        around = fam[(fam >> x) & 1 == 1]
        hits = ((around[:, None] & a[None, :]) != 0).all(axis=0)
        alt |= np.where(hits, 1 << x, 0)
    bad = _first(alt != ctx.lattice_table)
    if bad is not None:
        return _fail_at(s, bad, lattice=int(ctx.lattice_table[bad]), neighbourhoods=int(alt[bad]))


@claim("lattice-closure-laws", HARD, "pair",
       "The lattice bi-closure is extensive and monotone, fixes exactly the bi-closed sets, "
       "yields bi-closed sets, and maps A ∩ B into the meet of the closures.")
def _lattice_laws(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    cl = ctx.lattice_table
    if (bad := _first((a & ~cl) != 0)) is not None:
        return _fail_at(s, bad, law="extensive")
    for b in range(s.n):
        if (bad := _first((cl & ~cl[a | (1 << b)]) != 0)) is not None:
            return _fail_at(s, bad, law="monotone", point=s.points[b])
    if (bad := _first(ctx.biclosed_flags != (cl == a))) is not None:
        return _fail_at(s, bad, law="fixed points are the bi-closed sets")
    if (bad := _first(~ctx.biclosed_flags[cl])) is not None:
        return _fail_at(s, bad, law="closure is bi-closed")
    p, q = _pairs(s)
    if (bad := _first((cl[p & q] & ~(cl[p] & cl[q])) != 0)) is not None:
        return _fail_at(s, p[bad], B=q[bad], law="meet")


@claim("lattice-union-regular", HARD, "pair",
       "If γ and γ′ are e*-regular, the lattice bi-closure of A ∪ B is the union of the closures.", conditional=True)
def _lattice_union(inst):
    if not _regular_pair(inst):
        return VACUOUS
    s, cl = inst.space, inst.ctx.lattice_table
    p, q = _pairs(s)
    if (bad := _first(cl[p | q] != (cl[p] | cl[q]))) is not None:
        return _fail_at(s, p[bad], B=q[bad])


@claim("constx-closure-reduction", HARD, "pair",
       "With γ′ = X the bi-closed sets, the lattice closure and the pointwise closure reduce to their "
       "single-operation versions for γ.")
def _constx_closures(inst):
    s, ctx, op = inst.space, inst.ctx_gamma_x, inst.gamma
    a = _arange(s)
    if (bad := _first(ctx.biclosed_flags != op.single_open_flags[s.full & ~a])) is not None:
        return _fail_at(s, bad, part="closed sets")
    single_lat = _single_lattice(op)
    if (bad := _first(ctx.lattice_table != single_lat)) is not None:
        return _fail_at(s, bad, part="lattice closure")
    single_pw = _single_pointwise(op)
    if (bad := _first(ctx.pointwise_table != single_pw)) is not None:
        return _fail_at(s, bad, part="pointwise closure")


@claim("closure-chain", AUDIT, "pair",
       "A ⊆ e*Cl(A) ⊆ pointwise bi-closure(A) ⊆ lattice bi-closure(A).")
def _closure_chain(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    chain = (a, s.estar_closure_table, ctx.pointwise_table, ctx.lattice_table)
    names = ("A", "e*Cl", "pointwise", "lattice")
    for k in range(3):
        bad = _first((chain[k] & ~chain[k + 1]) != 0)
        if bad is not None:
            return _fail_at(s, bad, link=f"{names[k]} ⊄ {names[k + 1]}",
                            lower=int(chain[k][bad]), upper=int(chain[k + 1][bad]))


@claim("closure-chain-outer", HARD, "pair",
       "A ⊆ e*Cl(A), A ⊆ pointwise bi-closure(A) and pointwise ⊆ lattice bi-closure.")
def _closure_chain_outer(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    for lo, hi, link in ((a, s.estar_closure_table, "A ⊄ e*Cl"),
                         (a, ctx.pointwise_table, "A ⊄ pointwise"),
                         (ctx.pointwise_table, ctx.lattice_table, "pointwise ⊄ lattice")):
        if (bad := _first((lo & ~hi) != 0)) is not None:
            return _fail_at(s, bad, link=link)


@claim("biopen-fixed-points", HARD, "pair",
       "A is bi-open iff the pointwise closure fixes X\\A iff the lattice closure fixes X\\A iff X\\A is bi-closed.")
def _fixed_points(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    c = s.full & ~a
    views = (ctx.biopen_flags, ctx.pointwise_table[c] == c, ctx.lattice_table[c] == c, ctx.biclosed_flags[c])
    for k in range(1, 4):
        if (bad := _first(views[0] != views[k])) is not None:
            return _fail_at(s, bad, condition=k + 1)


@claim("regular-closures-agree", AUDIT, "pair",
       "On an e*_[γ,γ′]-regular space e*Cl, the pointwise and the lattice bi-closure coincide.", conditional=True)
def _regular_closures(inst):
    if not _biop_regular(inst, inst.ctx):
        return VACUOUS
    s, ctx = inst.space, inst.ctx
    for other, name in ((ctx.pointwise_table, "pointwise"), (ctx.lattice_table, "lattice")):
        if (bad := _first(s.estar_closure_table != other)) is not None:
            return _fail_at(s, bad, estar_closure=int(s.estar_closure_table[bad]), **{name: int(other[bad])})


@claim("pointwise-estar-closed", AUDIT, "pair", "The pointwise bi-closure of any set is e*-closed.")
def _pointwise_estar_closed(inst):
    s, pw = inst.space, inst.ctx.pointwise_table
    if (bad := _first(~s.estar_flags[s.full & ~pw])) is not None:
        return _fail_at(s, bad, pointwise=int(pw[bad]))


@claim("open-ops-closures-agree", HARD, "pair",
       "If γ and γ′ are e*-open operations, the pointwise and lattice bi-closures coincide.", conditional=True)
def _open_ops_agree(inst):
    if not _open_pair(inst):
        return VACUOUS
    s, ctx = inst.space, inst.ctx
    if (bad := _first(ctx.pointwise_table != ctx.lattice_table)) is not None:
        return _fail_at(s, bad, pointwise=int(ctx.pointwise_table[bad]), lattice=int(ctx.lattice_table[bad]))


@claim("open-ops-pointwise-idempotent", HARD, "pair",
       "If γ and γ′ are e*-open operations, the pointwise bi-closure is idempotent.", conditional=True)
def _open_ops_idem(inst):
    if not _open_pair(inst):
        return VACUOUS
    s, pw = inst.space, inst.ctx.pointwise_table
    if (bad := _first(pw[pw] != pw)) is not None:
        return _fail_at(s, bad, once=int(pw[bad]), twice=int(pw[pw[bad]]))


@claim("pointwise-closure-laws", HARD, "pair",
       "The pointwise bi-closure is extensive, fixes ∅ and X, fixes exactly the bi-closed sets, is monotone, "
       "and maps A ∩ B into the meet of the closures.")
def _pointwise_laws(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    pw = ctx.pointwise_table
    if (bad := _first((a & ~pw) != 0)) is not None:
        return _fail_at(s, bad, law="extensive")
    if pw[0] != 0 or pw[s.full] != s.full:
        return {"law": "∅ and X fixed", "cl(∅)": _set(s, pw[0]), "cl(X)": _set(s, pw[s.full])}
    if (bad := _first(ctx.biclosed_flags != (pw == a))) is not None:
        return _fail_at(s, bad, law="fixed points are the bi-closed sets")
    for b in range(s.n):
        if (bad := _first((pw & ~pw[a | (1 << b)]) != 0)) is not None:
            return _fail_at(s, bad, law="monotone", point=s.points[b])
    p, q = _pairs(s)
    if (bad := _first((pw[p & q] & ~(pw[p] & pw[q])) != 0)) is not None:
        return _fail_at(s, p[bad], B=q[bad], law="meet")


@claim("pointwise-split-bound", HARD, "pair",
       "The pointwise bi-closure of A ∪ B lies inside e*Cl_γ(A) ∪ e*Cl_γ′(B).")
def _split_bound(inst):
    s, pw = inst.space, inst.ctx.pointwise_table
    cg, cgp = inst.ctx_gamma_x.pointwise_table, inst.ctx_gamma_prime_x.pointwise_table
    p, q = _pairs(s)
    if (bad := _first((pw[p | q] & ~(cg[p] | cgp[q])) != 0)) is not None:
        return _fail_at(s, p[bad], B=q[bad])


@claim("pointwise-union-regular", HARD, "pair",
       "If γ and γ′ are e*-regular, the pointwise bi-closure of A ∪ B is the union of the closures.", conditional=True)
def _pointwise_union(inst):
    if not _regular_pair(inst):
        return VACUOUS
    s, pw = inst.space, inst.ctx.pointwise_table
    p, q = _pairs(s)
    if (bad := _first(pw[p | q] != (pw[p] | pw[q]))) is not None:
        return _fail_at(s, p[bad], B=q[bad])


@claim("interior-laws", HARD, "pair",
       "The bi-interior is bi-open, fixes exactly the bi-open sets, is idempotent, deflationary and monotone, "
       "and is super-additive on unions and sub-multiplicative on intersections.")
def _interior_laws(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    it = ctx.interior_table
    if (bad := _first(~ctx.biopen_flags[it])) is not None:
        return _fail_at(s, bad, law="interior is bi-open")
    if (bad := _first(ctx.biopen_flags != (it == a))) is not None:
        return _fail_at(s, bad, law="fixed points are the bi-open sets")
    if (bad := _first(it[it] != it)) is not None:
        return _fail_at(s, bad, law="idempotent")
    if (bad := _first((it & ~a) != 0)) is not None:
        return _fail_at(s, bad, law="deflationary")
    for b in range(s.n):
        if (bad := _first((it & ~it[a | (1 << b)]) != 0)) is not None:
            return _fail_at(s, bad, law="monotone", point=s.points[b])
    p, q = _pairs(s)
    if (bad := _first(((it[p] | it[q]) & ~it[p | q]) != 0)) is not None:
        return _fail_at(s, p[bad], B=q[bad], law="union")
    if (bad := _first((it[p & q] & ~(it[p] & it[q])) != 0)) is not None:
        return _fail_at(s, p[bad], B=q[bad], law="intersection")


@claim("interior-closure-duality", HARD, "pair",
       "Bi-interior and lattice bi-closure are complement-dual in all four forms.")
def _duality(inst):
    s, ctx = inst.space, inst.ctx
    a = _arange(s)
    c, full = s.full & ~a, s.full
    it, cl = ctx.interior_table, ctx.lattice_table
    forms = (
        (full & ~it, cl[c]),
        (full & ~cl, it[c]),
        (it, full & ~cl[c]),
        (cl, full & ~it[c]),
    )
    for k, (lhs, rhs) in enumerate(forms, start=1):
        if (bad := _first(lhs != rhs)) is not None:
            return _fail_at(s, bad, form=k)


@claim("oracle-biopen", HARD, "pair",
       "Bi-openness from reach antichains agrees with the literal double loop over e*-open U, V.")
def _oracle_biopen(inst):
    s, ctx = inst.space, inst.ctx
    for a in range(s.size):
        if bool(ctx.biopen_flags[a]) != oracles.is_biopen_literal(ctx, a):
            return _fail_at(s, a)
    for a in range(s.size):
        if int(ctx.pointwise_table[a]) != oracles.pointwise_closure_literal(ctx, a):
            return _fail_at(s, a, part="pointwise closure")


# ---------------------------------------------------------------------------
# function-level claims


def _conditions(inst):
    return _memo(inst, "conditions", lambda: continuity_conditions(inst.functions[0], inst.contexts[0], inst.contexts[1]))


def _fwit(inst, extra) -> dict:
    f = inst.functions[0]
    return {"f": f.as_names(), **extra}


@claim("continuity-implies-closure-image", HARD, "function",
       "Bi-continuity implies f(pointwise closure(A)) ⊆ pointwise closure(f(A)).", conditional=True)
def _c1c2(inst):
    v = _conditions(inst)
    if not v.c1:
        return VACUOUS
    if not v.c2:
        return _fwit(inst, v.witnesses["c2"])


@claim("continuity-closure-image-preimage", HARD, "function",
       "The image form and the preimage form of the pointwise-closure condition are equivalent.")
def _c2c3(inst):
    v = _conditions(inst)
    if v.c2 != v.c3:
        return _fwit(inst, {"c2": v.c2, "c3": v.c3})


@claim("continuity-closure-to-closed", HARD, "function",
       "The pointwise-closure condition implies that preimages of bi-closed sets are bi-closed.", conditional=True)
def _c3c4(inst):
    v = _conditions(inst)
    if not v.c3:
        return VACUOUS
    if not v.c4:
        return _fwit(inst, v.witnesses["c4"])


@claim("continuity-closed-open-chain", HARD, "function",
       "Preimages of bi-closed sets bi-closed, the lattice-closure image condition, preimages of bi-open sets "
       "bi-open, and the bi-open neighbourhood condition are all equivalent.")
def _c4to7(inst):
    v = _conditions(inst)
    vals = (v.c4, v.c5, v.c6, v.c7)
    if len(set(vals)) > 1:
        return _fwit(inst, {f"c{k}": b for k, b in zip(range(4, 8), vals)})


@claim("continuity-induced", HARD, "function",
       "A bi-continuous function is continuous between the bi-open topologies.", conditional=True)
def _induced(inst):
    v = _conditions(inst)
    if not v.c1:
        return VACUOUS
    if not v.c6:
        return _fwit(inst, v.witnesses["c6"])


def _all_agree(inst):
    v = _conditions(inst)
    if len(set(v.vector)) > 1:
        return _fwit(inst, {f"c{k}": b for k, b in enumerate(v.vector, start=1)})


@claim("continuity-equivalent-regular-codomain", AUDIT, "function",
       "If the codomain is e*_[β,β′]-regular, all seven continuity conditions agree.", conditional=True)
def _cor_regular(inst):
    cod = inst.contexts[1]
    if not _biop_regular(inst, cod):
        return VACUOUS
    return _all_agree(inst)


@claim("continuity-equivalent-open-ops", HARD, "function",
       "If β and β′ are e*-open operations, all seven continuity conditions agree.", conditional=True)
def _cor_open(inst):
    if not _open_pair(inst, inst.contexts[1]):
        return VACUOUS
    return _all_agree(inst)


@claim("closed-map-neighbourhood", HARD, "function",
       "For a bi-closed f, each B ⊆ Y and bi-open U ⊇ f⁻¹(B), V = Y \\ f(X \\ U) is bi-open with B ⊆ V and f⁻¹(V) ⊆ U.",
       conditional=True)
def _closed_nbhd(inst):
    f, dom, cod = inst.functions[0], inst.contexts[0], inst.contexts[1]
    if not is_bi_closed_map(f, dom, cod):
        return VACUOUS
    X, Y = f.domain, f.codomain
    for u in np.flatnonzero(dom.biopen_flags).tolist():
        v = Y.full & ~int(f.image_table[X.full & ~u])
        if not cod.biopen_flags[v] or int(f.preimage_table[v]) & ~u:
            return _fwit(inst, {"U": X.names(u), "V": Y.names(v)})
        for b in range(Y.size):
            if int(f.preimage_table[b]) & ~u == 0 and b & ~v:
                return _fwit(inst, {"U": X.names(u), "B": Y.names(b), "V": Y.names(v)})


@claim("inverse-continuous-closed", HARD, "function",
       "A bijection whose inverse is bi-continuous is a bi-closed map.", conditional=True)
def _inverse_closed(inst):
    f, dom, cod = inst.functions[0], inst.contexts[0], inst.contexts[1]
    if not f.is_bijective or not is_bi_continuous(f.inverse(), cod, dom):
        return VACUOUS
    v = is_bi_closed_map(f, dom, cod)
    if not v:
        return _fwit(inst, v.witness)


# ---------------------------------------------------------------------------
# triple-level claims


@claim("composition", HARD, "triple",
       "The composite of two bi-continuous functions is bi-continuous.", conditional=True)
def _composition(inst):
    (cx, cy, cz), (f, g) = inst.contexts, inst.functions
    if not (is_bi_continuous(f, cx, cy) and is_bi_continuous(g, cy, cz)):
        return VACUOUS
    v = is_bi_continuous(compose(f, g), cx, cz)
    if not v:
        return {"f": f.as_names(), "g": g.as_names(), **v.witness}


def claims_for(scope: str) -> list[Claim]:
    return [c for c in REGISTRY.values() if c.scope == scope]


__all__ = ["Claim", "HARD", "AUDIT", "REGISTRY", "UnknownClaim", "VACUOUS", "claims_for", "get"]
