"""Acceptance criteria, one test each, with a one-line verdict per criterion.

Run with pytest (the verdict lines appear in the terminal summary) or
directly with ``python3 tests/test_acceptance.py``.
"""

import json
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from estarlab import oracles
from estarlab.bioperations import BiopContext
from estarlab.morphisms import continuity_conditions
from estarlab.verifier import runner
from estarlab.verifier.claims import get
from estarlab.verifier.corpus import Corpus, CorpusSpec, all_topologies
from estarlab.verifier.goldens import workspace

RESULTS = []


def verdict(number, label, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {label}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


def _ctx(ws, g="gamma", gp="gamma_prime"):
    return BiopContext(ws.space, ws.operation(g), ws.operation(gp))


def test_criterion_01_w_intersection():
    t0 = time.perf_counter()
    ws = workspace("w")
    ctx = _ctx(ws)
    s = ws.space
    got = {k: bool(ctx.biopen_flags[s.mask(v)]) for k, v in
           (("{w1,w2}", ["w1", "w2"]), ("{w2,w3}", ["w2", "w3"]), ("{w2}", ["w2"]))}
    elapsed = time.perf_counter() - t0
    ok = got == {"{w1,w2}": True, "{w2,w3}": True, "{w2}": False} and elapsed < 1.0
    verdict(1, "bi-open {w1,w2}, {w2,w3}; {w2} not bi-open; < 1 s", ok, f"{got}, {elapsed:.3f}s")


def test_criterion_02_u_family():
    ws = workspace("u")
    ctx = _ctx(ws)
    fam = [ws.space.names(int(a)) for a in np.flatnonzero(ctx.biopen_flags)]
    verdict(2, "bi-open family is {∅, {u1,u2}, X}", fam == [[], ["u1", "u2"], ["u1", "u2", "u3"]], str(fam))


def test_criterion_03_v_and_t():
    v = workspace("v")
    cv = _ctx(v)
    m = v.space.mask(["v1", "v2"])
    t = workspace("t")
    ct = _ctx(t)
    n = t.space.mask(["t2"])
    got = (bool(cv.biopen_flags[m]), bool(cv.classic_biopen_flags[m]),
           bool(ct.biopen_flags[n]), bool(ct.gamma.single_open_flags[n]))
    verdict(3, "{v1,v2} bi-open and not classic; {t2} bi-open and not e*_γ-open",
            got == (True, False, True, False), str(got))


def test_criterion_04_z_closures():
    ws = workspace("z")
    ctx = _ctx(ws)
    s = ws.space
    a = s.mask(["z1"])
    pw = int(ctx.pointwise_table[a])
    lat = int(ctx.lattice_table[a])
    pw2 = int(ctx.pointwise_table[pw])
    ok = pw == s.mask(["z1", "z3"]) and lat == s.full and pw2 == s.full and pw2 != pw
    verdict(4, "pointwise({z1}) = {z1,z3}, lattice({z1}) = X, pointwise not idempotent", ok,
            f"computed pointwise {s.fmt(pw)}, lattice {s.fmt(lat)}, pointwise twice {s.fmt(pw2)}")


def test_criterion_05_s_vectors():
    ws = workspace("s")
    v1 = continuity_conditions(ws.function("id"), _ctx(ws, "X", "X"), _ctx(ws, "Cl", "X"))
    ctx = _ctx(ws, "Cl", "X")
    v2 = continuity_conditions(ws.function("cycle"), ctx, ctx)
    fam = [ws.space.names(int(a)) for a in np.flatnonzero(ctx.biopen_flags)]
    ok = (v1.c4 and not v1.c1) and (v2.c6 and not v2.c1 and fam == [[], ["s1", "s2", "s3"]])
    verdict(5, "identity map: c4 and not c1; 3-cycle: c6, not c1, domain family {∅, X}", ok,
            f"identity c1={v1.c1} c4={v1.c4}; cycle c1={v2.c1} c6={v2.c6} family={fam}")


def test_criterion_06_hard_suite():
    t0 = time.perf_counter()
    corpus = Corpus(CorpusSpec(max_n=3, pairs_per_space=200, functions=0, seed=0))
    instances = corpus.pair_instances()
    laws = {
        "union closure": get("biopen-union"),
        "dualities": get("interior-closure-duality"),
        "closure chain": get("closure-chain"),
        "membership law": get("lattice-membership"),
        "four-way agreement": get("biopen-fixed-points"),
    }
    failures = {k: 0 for k in laws}
    first = {}
    for inst in instances:
        for k, c in laws.items():
            res = c.check(inst)
            if res is not None:
                failures[k] += 1
                first.setdefault(k, res)
    elapsed = time.perf_counter() - t0
    per_space = min(sum(1 for i in instances if i.provenance.get("space") == j and i.provenance["source"] == "random")
                    for j in range(len(corpus.spaces)))
    ok = not any(failures.values()) and elapsed < 60 and per_space >= 200
    verdict(6, f"hard suite over {len(corpus.spaces)} topologies x {per_space} random pairs (+ canonical)", ok,
            f"failures {failures}, first {json.dumps(first, ensure_ascii=False)}, {elapsed:.1f}s")


def test_criterion_07_conditional_suites():
    ids = ["biopen-meet-regular", "open-ops-closures-agree", "open-ops-pointwise-idempotent",
           "continuity-equivalent-regular-codomain", "continuity-equivalent-open-ops", "composition"]
    recs = runner.run_claims([get(i) for i in ids], Corpus(runner.corpus_spec("n3", 0)))
    summary = {r["claim_id"]: (r["non_vacuous"], r["failures"]) for r in recs}
    ok = all(nv >= 1 and f == 0 for nv, f in summary.values())
    verdict(7, "conditional suites: zero failures, each hypothesis met at least once", ok,
            "non-vacuous/failures " + ", ".join(f"{k}={nv}/{f}" for k, (nv, f) in summary.items()))


def test_criterion_08_oracles():
    rng = np.random.default_rng(2024)
    spaces = all_topologies(4)
    from estarlab.verifier.corpus import _random_bound
    mism_open = mism_lat = 0
    draws = 0
    cache = {}
    while draws < 10_000:
        k = int(rng.integers(0, 400))
        if k not in cache:
            s = spaces[k % len(spaces)]
            ctx = BiopContext(s, _random_bound(s, 11, k, 0), _random_bound(s, 11, k, 1))
            cache[k] = (ctx, oracles.biopen_family_literal(ctx))
        ctx, fam = cache[k]
        a = int(rng.integers(0, ctx.space.size))
        mism_open += bool(ctx.biopen_flags[a]) != oracles.is_biopen_literal(ctx, a)
        mism_lat += int(ctx.lattice_table[a]) != oracles.lattice_closure_by_neighbourhoods(ctx, a, fam)
        draws += 1
    verdict(8, "antichain membership = double loop; lattice closure = neighbourhood form on 10^4 draws",
            mism_open == 0 and mism_lat == 0, f"{draws} draws, mismatches {mism_open}/{mism_lat}")


def _report_bytes(threads, path):
    env = dict(os.environ, ESTARLAB_THREADS=str(threads))
    subprocess.run([sys.executable, "-m", "estarlab.cli", "verify-paper", "--seed", "7", "--json", str(path)],
                   env=env, capture_output=True, check=False)
    return path.read_bytes()


def test_criterion_09_determinism(tmp_path):
    a = _report_bytes(1, tmp_path / "t1.json")
    b = _report_bytes(8, tmp_path / "t8.json")
    verdict(9, "verify-paper reports byte-identical with 1 and 8 threads", a == b and len(a) > 0,
            f"{len(a)} bytes")


def test_criterion_10_findings():
    report = runner.verify_paper(runner.corpus_spec("n3", 0))
    notes = report["notes"]
    claims = {r["claim_id"]: r for r in report["claims"]}
    split = notes.get("split-closure", {})
    reading = notes.get("continuity-reading", {})

    def reported(cid):
        r = claims.get(cid)
        if r is None:
            return False
        if r["verdict"] == "all-hold":
            return True
        w = r.get("witness", {})
        return r["verdict"] == "counterexample" and {"instance", "data", "shrink_steps"} <= set(w)

    ok = (split.get("pointwise bi-closure") == ["w1"] and "adopted" in reading
          and reported("biopen-in-estar") and reported("pointwise-estar-closed"))
    verdict(10, "report records the recomputed split closure, the continuity reading, and both audited claims", ok,
            f"split closure {split.get('pointwise bi-closure')}, biopen-in-estar: {claims['biopen-in-estar']['verdict']}, "
            f"pointwise-estar-closed: {claims['pointwise-estar-closed']['verdict']}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
