from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from estarlab import oracles
from estarlab.space import (
    DuplicatePoint,
    FiniteSpace,
    NotATopology,
    SetFamily,
    UnknownPoint,
    WidthExceeded,
    closure,
    complement,
    delta_closure,
    delta_interior,
    discrete,
    estar_closure,
    estar_interior,
    estar_open_family,
    indiscrete,
    interior,
    is_regular_open,
    validate_topology,
)
from estarlab.verifier.corpus import enumerate_topologies

from conftest import spaces


def count_preorders(n):
    """Labelled topologies on n points are in bijection with preorders."""
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    count = 0
    for choice in product((0, 1), repeat=len(pairs)):
        rel = {p for p, c in zip(pairs, choice) if c}
        if all((i, k) in rel for (i, j) in rel for (j2, k) in rel if j == j2 and i != k):
            count += 1
    return count


@pytest.mark.parametrize("n,expected", [(1, 1), (2, 4), (3, 29), (4, 355)])
def test_topology_counts(n, expected):
    tops = list(enumerate_topologies(n))
    assert len(tops) == expected == count_preorders(n)
    assert len(set(tops)) == expected


def test_enumeration_rejects_large_n():
    with pytest.raises(ValueError):
        list(enumerate_topologies(5))


def test_validation_errors():
    with pytest.raises(DuplicatePoint):
        validate_topology(["a", "a"], [[], ["a"]])
    with pytest.raises(WidthExceeded):
        discrete([f"p{i}" for i in range(17)])
    with pytest.raises(UnknownPoint):
        validate_topology(["a"], [["b"]])
    with pytest.raises(NotATopology) as e:
        validate_topology(["a", "b", "c"], [[], ["a"], ["b"], ["a", "b", "c"]])
    assert "∪" in str(e.value) and e.value.witness["A"] == ["a"] and e.value.witness["B"] == ["b"]
    with pytest.raises(NotATopology) as e:
        validate_topology(["a", "b", "c"], [[], ["a", "b"], ["b", "c"], ["a", "b", "c"]])
    assert "∩" in str(e.value)


def test_complete_builds_generated_topology():
    s = validate_topology(["a", "b", "c"], [["a"], ["b"]], complete=True)
    assert s.names(s.mask(["a", "b"])) == ["a", "b"] and s.is_open(s.mask(["a", "b"]))


def test_extreme_spaces():
    d, i = discrete("abc"), indiscrete("abc")
    assert len(estar_open_family(d)) == 8
    # every nonempty subset of an indiscrete space is e*-open
    assert len(estar_open_family(i)) == 8


def test_single_open_point_gives_every_subset():
    s = validate_topology(["u1", "u2", "u3"], [[], ["u1"], ["u1", "u2", "u3"]])
    assert len(estar_open_family(s)) == 8


def test_example_families(examples):
    w = examples["w"].space
    fam = estar_open_family(w)
    assert len(fam) == 8 and w.mask(["w2"]) in fam
    z = examples["z"].space
    # semi-open sets are e*-open
    assert z.mask(["z1", "z3"]) in estar_open_family(z)


def test_set_family_api(examples):
    s = examples["u"].space
    f = SetFamily.from_flags(s, s.estar_flags, "e*O")
    assert len(f) == 8 and list(f) == list(range(8)) and f.names()[0] == []
    assert f <= f and f == SetFamily(s, frozenset(range(8)))


@given(spaces())
def test_operators_match_scans(s):
    for a in range(s.size):
        assert interior(s, a) == oracles.interior_scan(s, a)
        assert closure(s, a) == oracles.closure_scan(s, a)
        assert delta_closure(s, a) == oracles.delta_closure_literal(s, a)
        assert delta_interior(s, a) == oracles.delta_interior_literal(s, a)


@given(spaces())
def test_estar_family_and_closure_match_literal(s):
    assert np.flatnonzero(s.estar_flags).tolist() == oracles.estar_family_literal(s)
    for a in range(s.size):
        assert estar_closure(s, a) == oracles.estar_closure_literal(s, a)


@given(spaces())
def test_tower_and_dualities(s):
    a = np.arange(s.size)
    c = s.full & ~a
    assert np.array_equal(s.closure_table, s.full & ~s.interior_table[c])
    assert np.array_equal(s.delta_closure_table, s.full & ~s.delta_interior_table[c])
    assert np.array_equal(s.estar_closure_table, s.full & ~s.estar_interior_table[c])
    # Int ⊆ Int_δ ... Cl_δ ⊇ Cl
    assert not (s.delta_interior_table & ~s.interior_table).any()
    assert not (s.closure_table & ~s.delta_closure_table).any()
    for o in s.opens:
        assert s.is_estar_open(o)
    for x in range(s.size):
        if is_regular_open(s, x):
            assert s.is_open(x)


@given(spaces(), st.data())
def test_estar_family_union_closed(s, data):
    fam = np.flatnonzero(s.estar_flags)
    u, v = data.draw(st.sampled_from(fam.tolist())), data.draw(st.sampled_from(fam.tolist()))
    assert s.estar_flags[u | v]


@given(spaces(), st.data())
def test_estar_interior_closure_laws(s, data):
    a = data.draw(st.integers(0, s.full))
    i, c = estar_interior(s, a), estar_closure(s, a)
    assert i & ~a == 0 and a & ~c == 0
    assert s.is_estar_open(i) and s.is_estar_open(complement(s, c))


def test_mask_and_name_helpers(examples):
    s = examples["w"].space
    assert s.mask(["w3", "w1"]) == 0b101 and s.fmt(0b101) == "{w1,w3}"
    with pytest.raises(TypeError):
        s.mask("w1")
    with pytest.raises(UnknownPoint):
        s.index("q")
    with pytest.raises(ValueError):
        s.check(1 << 5)
    assert FiniteSpace(s.points, s.opens) == s and hash(FiniteSpace(s.points, s.opens)) == hash(s)
