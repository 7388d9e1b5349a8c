import json

import pytest
from hypothesis import given, strategies as st

from estarlab.cli import main
from estarlab.verifier.corpus import random_operation
from estarlab.verifier.goldens import example_path
from estarlab.workspace import FunctionDoc, Workspace, WorkspaceError, dumps, parse, serialize

from conftest import spaces


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@given(spaces(max_n=3), st.integers(0, 1000), st.sampled_from(["table-uniform", "piecewise", "closure-biased"]))
def test_round_trip(s, seed, profile):
    ws = Workspace(s, {"g": random_operation(s, seed, 0, profile)},
                   {"f": FunctionDoc(tuple((p, s.points[0]) for p in s.points))})
    again = parse(json.loads(dumps(ws)))
    assert again == ws
    assert serialize(again) == serialize(ws)


@pytest.mark.parametrize("doc,pointer", [
    ({"points": ["a"], "opens": [[], ["a"]], "extra": 1}, ""),
    ({"points": ["a", "a"], "opens": []}, "/points"),
    ({"points": ["a"], "opens": [["b"]]}, "/opens"),
    ({"points": ["a", "b"], "opens": [[], ["a"], ["b"]]}, "/opens"),
    ({"points": ["a"], "opens": [[], ["a"]], "operations": {"g": {"kind": "warp"}}}, "/operations/g/kind"),
    ({"points": ["a"], "opens": [[], ["a"]], "operations": {"g": {"kind": "table", "images": [{"set": ["z"], "image": []}]}}},
     "/operations/g/images/0/set/0"),
    ({"points": ["a", "b"], "opens": [[], ["a", "b"]], "operations": {"g": {"kind": "table", "images": [{"set": ["a"], "image": []}]}}},
     "/operations/g"),
    ({"points": ["a"], "opens": [[], ["a"]], "functions": {"f": {"table": {"a": "q"}}}}, "/functions/f/table"),
])
def test_positioned_errors(doc, pointer):
    with pytest.raises(WorkspaceError) as e:
        parse(doc)
    assert e.value.pointer == pointer


def test_families(capsys):
    code, out, _ = run(capsys, "families", example_path("u"))
    assert code == 0 and out.strip() == "[], [u1,u2], [u1,u2,u3]"
    code, out, _ = run(capsys, "families", example_path("u"), "--kind", "estar")
    assert out.count("[") == 8
    _, a, _ = run(capsys, "families", example_path("w"), "--kind", "estar")
    _, b, _ = run(capsys, "families", example_path("w"), "--gamma", "id", "--gamma-prime", "id")
    assert a == b
    code, out, _ = run(capsys, "families", example_path("t"), "--kind", "single", "--json")
    assert json.loads(out)["family"][0] == []


def test_closure_and_interior(capsys):
    code, out, _ = run(capsys, "closure", example_path("z"), "--set", "z1", "--which", "pointwise")
    assert code == 0 and out.strip() == "[z1]"
    _, out, _ = run(capsys, "closure", example_path("z"), "--set", "", "--which", "lattice")
    assert out.strip() == "[]"
    _, out, _ = run(capsys, "closure", example_path("z"), "--set", "z1,z2", "--which", "estar")
    assert out.strip() == "[z1,z2,z3]"
    _, out, _ = run(capsys, "interior", example_path("w"), "--set", "{w2}")
    assert out.strip() == "[]"
    code, _, err = run(capsys, "closure", example_path("z"), "--set", "q")
    assert code == 2 and "q" in err


def test_continuity(capsys, tmp_path):
    code, out, _ = run(capsys, "continuity", example_path("s"), "--fn", "id", "--ops", "X,X,Cl,X")
    assert code == 0 and out.splitlines()[0].startswith("c1: false")
    code, out, _ = run(capsys, "continuity", example_path("s"), example_path("s"), "--fn", "id", "--ops", "id,id,id,id", "--json")
    v = json.loads(out)
    assert code == 0 and all(v[f"c{k}"] for k in range(1, 8))
    code, _, err = run(capsys, "continuity", example_path("s"), example_path("w"), "--fn", "cycle", "--ops", "id,id,id,id")
    assert code == 2
    code, out, _ = run(capsys, "closed-map", example_path("s"), "--fn", "id", "--ops", "id,id,id,id")
    assert code == 0 and out.startswith("bi-closed: true")


def test_codomain_reference(capsys, tmp_path):
    cod = json.loads(open(example_path("s")).read())
    (tmp_path / "cod.json").write_text(json.dumps(cod))
    dom = {"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]],
           "functions": {"f": {"codomain": "cod.json", "table": {"a": "s1", "b": "s3"}}}}
    (tmp_path / "dom.json").write_text(json.dumps(dom))
    code, out, _ = run(capsys, "continuity", str(tmp_path / "dom.json"), "--fn", "f", "--ops", "id,id,id,id")
    assert code == 0 and out.count("c") == 7


def test_check_and_search(capsys):
    code, out, _ = run(capsys, "check", "biopen-union")
    assert code == 0 and "all-hold" in out
    code, out, _ = run(capsys, "check", "biopen-in-estar", "--seed", "4")
    assert code == 0 and "counterexample" in out
    code, _, _ = run(capsys, "check", "missing-claim")
    assert code == 2
    code, out, _ = run(capsys, "check", "--list")
    assert "closure-chain" in out
    code, out, _ = run(capsys, "search", "biopen-in-estar", "--limit", "2", "--json")
    assert len(json.loads(out)["counterexamples"]) == 2


def test_verify_paper_exit_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    code, out, _ = run(capsys, "verify-paper", "--seed", "7", "--json", str(a))
    assert code == 1 and "status: FAILED" in out
    run(capsys, "--seed", "7", "verify-paper", "--json", str(b))
    assert a.read_bytes() == b.read_bytes()
    code, _, err = run(capsys, "verify-paper", "--json", str(tmp_path / "missing" / "x.json"))
    assert code == 2


def test_corrupt_doc(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _, err = run(capsys, "families", str(p))
    assert code == 2 and "line 1" in err
    code, _, err = run(capsys, "families", str(tmp_path / "absent.json"))
    assert code == 2
