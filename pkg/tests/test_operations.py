import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from estarlab import oracles
from estarlab.operations import (
    ClosureOp,
    ConstantX,
    ContainsPoint,
    EqualsSet,
    Identity,
    MemberOfList,
    NotExpansive,
    NotInDomain,
    Piecewise,
    Table,
    TableIncomplete,
    TableKeyNotEstarOpen,
    apply,
    bind_operation,
    bind_table,
    closure_op,
    constant_x,
    identity,
    is_estar_gamma_regular_space,
    is_estar_open_operation,
    is_estar_regular,
    single_op_open_family,
)
from estarlab.space import discrete, validate_topology
from estarlab.verifier.corpus import PROFILES, random_operation
from estarlab.workspace import dump_op

from conftest import operations, spaces

DATA = Path(__file__).parent / "data"


def test_expansiveness_is_enforced():
    s = discrete(["a", "b"])
    with pytest.raises(TableIncomplete):
        bind_operation(s, Piecewise(EqualsSet(frozenset({"a"})), Table.of({}), Identity()))
    with pytest.raises(NotExpansive) as e:
        bind_table(s, {0: 0, 1: 0, 2: 2, 3: 3})
    assert e.value.witness == {"V": ["a"], "image": []}


def test_table_errors():
    s = validate_topology(["a", "b", "c"], [[], ["a"], ["a", "b", "c"]])
    with pytest.raises(TableIncomplete):
        bind_table(s, {0: 0})
    u = validate_topology(["w1", "w2", "w3"], [[], ["w2"], ["w3"], ["w1", "w2"], ["w2", "w3"], ["w1", "w2", "w3"]])
    z = validate_topology(["z1", "z2", "z3"], [[], ["z1"], ["z2"], ["z1", "z2"], ["z1", "z2", "z3"]])
    assert not z.is_estar_open(z.mask(["z3"]))
    with pytest.raises(TableKeyNotEstarOpen):
        bind_operation(z, Table.of({frozenset({"z3"}): frozenset({"z3"})}))
    assert len(u.estar_masks) == 8


def test_apply_outside_domain():
    z = validate_topology(["a", "b"], [[], ["a"], ["a", "b"]])
    op = identity(z)
    missing = [m for m in range(z.size) if not z.is_estar_open(m)]
    for m in missing:
        with pytest.raises(NotInDomain):
            apply(op, m)
    assert apply(op, z.full) == z.full


def test_spec_language(examples):
    w = examples["w"]
    g, gp = w.operation("gamma"), w.operation("gamma_prime")
    s = w.space
    assert apply(g, s.mask(["w3"])) == s.closure_table[s.mask(["w3"])]
    assert apply(g, s.mask(["w1"])) == s.full
    assert apply(gp, s.mask(["w2"])) == s.full and apply(gp, s.mask(["w1"])) == s.mask(["w1"])
    m = bind_operation(s, Piecewise(MemberOfList((frozenset({"w1"}),)), ConstantX(), ClosureOp()))
    assert apply(m, s.mask(["w1"])) == s.full
    c = bind_operation(s, Piecewise(ContainsPoint("w2"), Identity(), ConstantX()))
    assert apply(c, s.mask(["w2", "w3"])) == s.mask(["w2", "w3"])


def test_random_operation_extremes():
    s = validate_topology(["a", "b", "c"], [[], ["a"], ["a", "b"], ["a", "b", "c"]])
    lo = bind_operation(s, random_operation(s, 1, 0, "table-uniform", 0.0))
    hi = bind_operation(s, random_operation(s, 1, 0, "table-uniform", 1.0))
    assert lo == identity(s) and hi == constant_x(s)
    with pytest.raises(ValueError):
        random_operation(s, 0, 0, "bogus")


def test_random_operation_golden(examples):
    s = examples["w"].space
    pinned = json.loads((DATA / "random_operation_seed42_draw0.json").read_text())
    assert dump_op(random_operation(s, 42, 0, "table-uniform"), s) == pinned


@pytest.mark.parametrize("profile", PROFILES)
def test_random_operation_deterministic(examples, profile):
    s = examples["z"].space
    assert random_operation(s, 5, 3, profile) == random_operation(s, 5, 3, profile)
    bind_operation(s, random_operation(s, 5, 3, profile))


def test_example_single_families(examples):
    t = examples["t"]
    g = t.operation("gamma")
    fam = single_op_open_family(g)
    assert t.space.mask(["t2"]) not in fam
    w = examples["w"]
    assert is_estar_regular(w.operation("gamma"))
    v = is_estar_regular(w.operation("gamma_prime"))
    assert not v and v.witness == {"x": "w2", "U": ["w1", "w2"], "V": ["w2", "w3"]}


@given(spaces(), st.data())
def test_single_family_matches_literal(s, data):
    op = data.draw(operations(s))
    flags = op.single_open_flags
    for a in range(s.size):
        assert bool(flags[a]) == oracles.single_open_literal(op, a)


@given(spaces())
def test_extreme_operations(s):
    assert np.array_equal(identity(s).single_open_flags, s.estar_flags)
    assert is_estar_open_operation(identity(s)) and is_estar_open_operation(constant_x(s))
    assert is_estar_regular(constant_x(s))
    # id is e*-regular exactly when the e*-open family is closed under finite meets
    fam = np.flatnonzero(s.estar_flags)
    meet_closed = bool(s.estar_flags[np.bitwise_and.outer(fam, fam)].all())
    assert bool(is_estar_regular(identity(s))) == meet_closed
    assert is_estar_gamma_regular_space(s, identity(s))


@given(spaces(), st.data())
def test_single_family_union_closed(s, data):
    op = data.draw(operations(s))
    fam = np.flatnonzero(op.single_open_flags)
    assert op.single_open_flags[np.bitwise_or.outer(fam, fam)].all()
    assert op.single_open_flags[0] and op.single_open_flags[s.full]


@given(spaces(), st.data())
def test_regular_space_iff_families_agree(s, data):
    op = data.draw(operations(s))
    assert bool(is_estar_gamma_regular_space(s, op)) == np.array_equal(op.single_open_flags, s.estar_flags)


@given(spaces(), st.data())
def test_estar_regular_literal(s, data):
    op = data.draw(operations(s))
    dom = s.estar_masks.tolist()
    literal = all(
        any(int(op.images[w]) & ~(int(op.images[u]) & int(op.images[v])) == 0 for w in dom if w >> x & 1)
        for x in range(s.n) for u in dom if u >> x & 1 for v in dom if v >> x & 1
    )
    assert bool(is_estar_regular(op)) == literal


def test_closure_op_name(examples):
    s = examples["z"].space
    assert closure_op(s).name == "Cl" and identity(s).name == "id" and constant_x(s).name == "X"
