"""Instance generators: exhaustive topologies, seeded random operations and functions."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterator

import numpy as np

from ..bioperations import BiopContext
from ..morphisms import FiniteFunction
from ..operations import (
    BoundOperation,
    ClosureOp,
    ConstantX,
    ContainsPoint,
    EqualsSet,
    Identity,
    MemberOfList,
    Piecewise,
    Table,
    bind_operation,
    closure_op,
    constant_x,
    identity,
)
from ..space import FiniteSpace, generated_opens

PROFILES = ("table-uniform", "piecewise", "closure-biased")


def default_points(n: int) -> tuple[str, ...]:
    return tuple(f"x{i + 1}" for i in range(n))


def enumerate_topologies(n: int, points=None) -> Iterator[FiniteSpace]:
    """All labelled topologies on n ≤ 4 points, each once, in a fixed order.

    Candidate families are the subsets of the proper nonempty subsets of X
    (ascending as integers); ∅ and X are added and the family is kept when
    it is closed under binary union and intersection.
    """
    if not 1 <= n <= 4:
        raise ValueError("exhaustive enumeration is limited to 1..4 points")
    points = tuple(points) if points is not None else default_points(n)
    full = (1 << n) - 1
    middle = list(range(1, full))
    for code in range(1 << len(middle)):
        fam = {0, full}
        for i, m in enumerate(middle):
            if code >> i & 1:
                fam.add(m)
        if _closed(fam):
            yield FiniteSpace(points, frozenset(fam))


def _closed(fam: set[int]) -> bool:
    members = sorted(fam)
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if a | b not in fam or a & b not in fam:
                return False
    return True


def all_topologies(max_n: int) -> list[FiniteSpace]:
    out = []
    for n in range(1, max_n + 1):
        out.extend(enumerate_topologies(n))
    return out


def _rng(seed: int, draw: int, salt: int = 0) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), int(draw), int(salt)]))


def random_topology(n: int, seed: int, draw: int, points=None) -> FiniteSpace:
    """Topology generated by a handful of random subsets."""
    rng = _rng(seed, draw, 1)
    full = (1 << n) - 1
    k = int(rng.integers(0, n + 2))
    subbasis = [int(rng.integers(0, full + 1)) for _ in range(k)]
    points = tuple(points) if points is not None else default_points(n)
    return FiniteSpace(points, generated_opens(n, subbasis))


def random_operation(space: FiniteSpace, seed: int, draw: int, profile: str = "table-uniform", density: float = 0.5):
    """Seeded expansive operation spec: each image is V plus a random extra part of X \\ V.

    ``density`` is the chance of each outside point joining the extra part, so
    0 gives the identity and 1 the constant-X operation.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; expected one of {PROFILES}")
    rng = _rng(seed, draw, 2 + PROFILES.index(profile))
    n, full = space.n, space.full
    dom = space.estar_masks.tolist()

    def extra(v, p):
        bits_out = rng.random(n) < p
        e = 0
        for i in range(n):
            if bits_out[i]:
                e |= 1 << i
        return e & ~v & full

    if profile == "table-uniform":
        return Table.from_masks(space, {v: v | extra(v, density) for v in dom})
    if profile == "closure-biased":
        cl = space.closure_table
        images = {}
        for v in dom:
            base = int(cl[v]) if rng.random() < 0.7 else v
            images[v] = base | extra(v, density / 2)
        return Table.from_masks(space, images)
    return _random_piecewise(space, rng, dom, depth=2)


def _random_piecewise(space, rng, dom, depth):
    leaves = (Identity(), ClosureOp(), ConstantX())
    if depth == 0 or rng.random() < 0.3:
        return leaves[int(rng.integers(0, 3))]
    kind = int(rng.integers(0, 3))
    if kind == 0:
        cond = ContainsPoint(space.points[int(rng.integers(0, space.n))])
    elif kind == 1:
        cond = EqualsSet(frozenset(space.names(dom[int(rng.integers(0, len(dom)))])))
    else:
        k = int(rng.integers(1, min(3, len(dom)) + 1))
        picks = sorted(set(int(i) for i in rng.integers(0, len(dom), size=k)))
        cond = MemberOfList(tuple(frozenset(space.names(dom[i])) for i in picks))
    return Piecewise(cond, _random_piecewise(space, rng, dom, depth - 1), _random_piecewise(space, rng, dom, depth - 1))


def random_function(domain: FiniteSpace, codomain: FiniteSpace, seed: int, draw: int) -> FiniteFunction:
    rng = _rng(seed, draw, 7)
    style = rng.random()
    if style < 0.2:
        table = (int(rng.integers(0, codomain.n)),) * domain.n
    elif style < 0.4 and domain == codomain:
        table = tuple(int(t) for t in rng.permutation(domain.n))
    else:
        table = tuple(int(t) for t in rng.integers(0, codomain.n, size=domain.n))
    return FiniteFunction(domain, codomain, table)


# ---------------------------------------------------------------------------
# instances


CANONICAL = ("id", "X", "Cl")


def canonical_op(space: FiniteSpace, name: str) -> BoundOperation:
    return {"id": identity, "X": constant_x, "Cl": closure_op}[name](space)


@dataclass(frozen=True, eq=False)
class Instance:
    """Contexts (one per space involved), functions between them, and provenance."""

    contexts: tuple
    functions: tuple = ()
    provenance: dict = field(default_factory=dict)

    @property
    def ctx(self) -> BiopContext:
        return self.contexts[0]

    @property
    def space(self) -> FiniteSpace:
        return self.contexts[0].space

    @property
    def gamma(self) -> BoundOperation:
        return self.contexts[0].gamma

    @property
    def gamma_prime(self) -> BoundOperation:
        return self.contexts[0].gamma_prime

    @cached_property
    def ctx_gamma_x(self) -> BiopContext:
        return BiopContext(self.space, self.gamma, constant_x(self.space))

    @cached_property
    def ctx_gamma_prime_x(self) -> BiopContext:
        return BiopContext(self.space, self.gamma_prime, constant_x(self.space))

    @cached_property
    def facts(self) -> dict:
        """Memo for predicates shared across claims."""
        return {}


def pair_instance(space, gamma, gamma_prime, provenance) -> Instance:
    return Instance((BiopContext(space, gamma, gamma_prime),), (), provenance)


def _random_bound(space, seed, draw, slot):
    """A bound operation: occasionally canonical, otherwise a random spec."""
    rng = _rng(seed, draw, 100 + slot)
    r = rng.random()
    if r < 0.15:
        return canonical_op(space, CANONICAL[int(rng.integers(0, 3))])
    profile = PROFILES[int(rng.integers(0, 3))]
    density = float(rng.choice([0.15, 0.35, 0.6]))
    return bind_operation(space, random_operation(space, seed, draw * 8 + slot, profile, density))


@dataclass(frozen=True)
class CorpusSpec:
    """Which instances a verification run uses.

    ``pairs`` seeded random operation pairs are spread round-robin over all
    topologies with at most ``max_n`` points; ``pairs_per_space`` instead
    gives each topology its own quota.  Every topology also receives the
    canonical pairs built from id, X and Cl.
    """

    max_n: int = 3
    pairs: int = 1000
    functions: int = 200
    seed: int = 0
    pairs_per_space: int | None = None
    canonical: bool = True

    def describe(self) -> dict:
        return {
            "max_n": self.max_n, "pairs": self.pairs, "functions": self.functions, "seed": self.seed,
            "pairs_per_space": self.pairs_per_space, "canonical": self.canonical,
        }


class Corpus:
    def __init__(self, spec: CorpusSpec = CorpusSpec()):
        self.spec = spec
        self.spaces = all_topologies(spec.max_n)

    def space_instances(self) -> list[Instance]:
        return [
            pair_instance(s, identity(s), identity(s), {"source": "exhaustive", "space": i})
            for i, s in enumerate(self.spaces)
        ]

    def pair_instances(self) -> list[Instance]:
        spec, out = self.spec, []
        if spec.canonical:
            for i, s in enumerate(self.spaces):
                for a in CANONICAL:
                    for b in CANONICAL:
                        out.append(pair_instance(s, canonical_op(s, a), canonical_op(s, b),
                                                 {"source": "exhaustive", "space": i, "ops": [a, b]}))
        if spec.pairs_per_space is not None:
            draws = [(i, i * spec.pairs_per_space + k) for i in range(len(self.spaces)) for k in range(spec.pairs_per_space)]
        else:
            draws = [(d % len(self.spaces), d) for d in range(spec.pairs)]
        for i, d in draws:
            out.append(self.random_pair(i, d))
        return out

    def random_pair(self, space_index: int, draw: int) -> Instance:
        s = self.spaces[space_index]
        seed = self.spec.seed
        return pair_instance(s, _random_bound(s, seed, draw, 0), _random_bound(s, seed, draw, 1),
                             {"source": "random", "seed": seed, "draw": draw, "space": space_index})

    def _pick_space(self, rng):
        return int(rng.integers(0, len(self.spaces)))

    def function_instances(self) -> list[Instance]:
        seed, out = self.spec.seed, []
        for d in range(self.spec.functions):
            rng = _rng(seed, d, 50)
            i = self._pick_space(rng)
            j = i if rng.random() < 0.3 else self._pick_space(rng)
            X, Y = self.spaces[i], self.spaces[j]
            dom = BiopContext(X, _random_bound(X, seed, 10_000 + d, 0), _random_bound(X, seed, 10_000 + d, 1))
            cod = BiopContext(Y, _random_bound(Y, seed, 20_000 + d, 0), _random_bound(Y, seed, 20_000 + d, 1))
            f = random_function(X, Y, seed, d)
            out.append(Instance((dom, cod), (f,), {"source": "random", "seed": seed, "draw": d, "spaces": [i, j]}))
        return out

    def triple_instances(self) -> list[Instance]:
        seed, out = self.spec.seed, []
        for d in range(self.spec.functions):
            rng = _rng(seed, d, 60)
            idx = [self._pick_space(rng) for _ in range(3)]
            ctxs = []
            for k, i in enumerate(idx):
                S = self.spaces[i]
                ctxs.append(BiopContext(S, _random_bound(S, seed, 30_000 + 3 * d + k, 0), _random_bound(S, seed, 30_000 + 3 * d + k, 1)))
            f = random_function(ctxs[0].space, ctxs[1].space, seed, 40_000 + d)
            g = random_function(ctxs[1].space, ctxs[2].space, seed, 50_000 + d)
            out.append(Instance(tuple(ctxs), (f, g), {"source": "random", "seed": seed, "draw": d, "spaces": idx}))
        return out


def subsets_of(n: int, k: int) -> Iterator[int]:
    for combo in combinations(range(n), k):
        m = 0
        for i in combo:
            m |= 1 << i
        yield m
