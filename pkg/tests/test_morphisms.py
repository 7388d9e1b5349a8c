import numpy as np
import pytest
from hypothesis import given, strategies as st

from estarlab import oracles
from estarlab.bioperations import BiopContext
from estarlab.morphisms import (
    FiniteFunction,
    PreconditionViolated,
    closed_map_neighborhood_property,
    compose,
    continuity_conditions,
    identity_map,
    image,
    is_bi_closed_map,
    is_bi_continuous,
    preimage,
)
from estarlab.operations import closure_op, constant_x, identity, is_estar_open_operation
from estarlab.space import SpaceMismatch, UnknownPoint

from conftest import contexts


@st.composite
def function_setups(draw):
    dom = draw(contexts(max_n=3))
    cod = draw(contexts(max_n=3))
    table = draw(st.lists(st.integers(0, cod.space.n - 1), min_size=dom.space.n, max_size=dom.space.n))
    return FiniteFunction(dom.space, cod.space, tuple(table)), dom, cod


def test_function_basics(examples):
    s = examples["s"]
    f = s.function("cycle")
    assert f("s1") == "s2" and f.as_names() == {"s1": "s2", "s2": "s3", "s3": "s1"}
    assert f.is_bijective and compose(f, f.inverse()) == identity_map(s.space)
    assert image(f, s.space.mask(["s1", "s2"])) == s.space.mask(["s2", "s3"])
    assert preimage(f, s.space.mask(["s1"])) == s.space.mask(["s3"])
    with pytest.raises(UnknownPoint):
        FiniteFunction(s.space, s.space, (0, 1, 5))
    with pytest.raises(ValueError):
        FiniteFunction.from_names(s.space, s.space, {"s1": "s1"})
    with pytest.raises(SpaceMismatch):
        compose(f, FiniteFunction(examples["w"].space, examples["w"].space, (0, 1, 2)))


def test_identity_is_continuous_everywhere(examples):
    s = examples["w"].space
    ctx = BiopContext(s, examples["w"].operation("gamma"), examples["w"].operation("gamma_prime"))
    v = continuity_conditions(identity_map(s), ctx, ctx)
    assert all(v.vector)


def test_faithful_example_vectors(examples):
    s = examples["s"]
    X, Cl = constant_x(s.space), closure_op(s.space)
    v = continuity_conditions(s.function("id"), BiopContext(s.space, X, X), BiopContext(s.space, Cl, X))
    assert not v.c1 and not v.c4
    ctx = BiopContext(s.space, Cl, X)
    v = continuity_conditions(s.function("cycle"), ctx, ctx)
    assert not v.c1 and not v.c6
    assert v.witnesses["c1"]["x"] == "s1"


def test_mismatched_contexts(examples):
    s, w = examples["s"].space, examples["w"].space
    f = identity_map(s)
    with pytest.raises(SpaceMismatch):
        is_bi_continuous(f, BiopContext(w, identity(w), identity(w)), BiopContext(s, identity(s), identity(s)))


@given(function_setups())
def test_continuity_matches_literal(setup):
    f, dom, cod = setup
    for strict in (False, True):
        assert bool(is_bi_continuous(f, dom, cod, strict)) == oracles.bi_continuous_literal(f, dom, cod, strict)


@given(function_setups())
def test_condition_implications(setup):
    f, dom, cod = setup
    v = continuity_conditions(f, dom, cod)
    if v.c1:
        assert v.c2 and v.c6
    assert v.c2 == v.c3
    if v.c3:
        assert v.c4
    assert v.c4 == v.c5 == v.c6 == v.c7


@given(function_setups())
def test_open_codomain_operations_make_conditions_agree(setup):
    f, dom, cod = setup
    if is_estar_open_operation(cod.gamma) and is_estar_open_operation(cod.gamma_prime):
        assert len(set(continuity_conditions(f, dom, cod).vector)) == 1


@given(function_setups(), st.data())
def test_composition(setup, data):
    f, cx, cy = setup
    table = data.draw(st.lists(st.integers(0, cx.space.n - 1), min_size=cy.space.n, max_size=cy.space.n))
    g = FiniteFunction(cy.space, cx.space, tuple(table))
    if is_bi_continuous(f, cx, cy) and is_bi_continuous(g, cy, cx):
        assert is_bi_continuous(compose(f, g), cx, cx)


@given(function_setups(), st.data())
def test_closed_map_neighbourhood(setup, data):
    f, dom, cod = setup
    X, Y = f.domain, f.codomain
    if not is_bi_closed_map(f, dom, cod):
        return
    u = data.draw(st.sampled_from(np.flatnonzero(dom.biopen_flags).tolist()))
    bs = [b for b in range(Y.size) if preimage(f, b) & ~u == 0]
    b = data.draw(st.sampled_from(bs))
    v = closed_map_neighborhood_property(f, dom, cod, b, u)
    assert b & ~v == 0 and preimage(f, v) & ~u == 0 and cod.biopen_flags[v]


def test_closed_map_preconditions(examples):
    s = examples["s"].space
    ctx = BiopContext(s, closure_op(s), constant_x(s))
    f = examples["s"].function("cycle")
    with pytest.raises(PreconditionViolated):
        closed_map_neighborhood_property(f, ctx, ctx, 0, s.full)
    idc = BiopContext(s, identity(s), identity(s))
    g = identity_map(s)
    with pytest.raises(PreconditionViolated):
        closed_map_neighborhood_property(g, idc, idc, s.full, s.mask(["s1"]))
