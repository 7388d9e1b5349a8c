"""Run claims over a corpus, minimize counterexamples and assemble reports.

Instances are independent, so they are evaluated in a thread pool whose size
comes from ``ESTARLAB_THREADS``; results are merged in corpus order, which
keeps reports identical for any thread count.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from ..bioperations import BiopContext
from ..operations import Table, bind_operation
from ..space import FiniteSpace
from . import goldens
from .claims import HARD, REGISTRY, VACUOUS, Claim, get
from .corpus import CANONICAL, Corpus, CorpusSpec, Instance, canonical_op

SCOPES = ("space", "pair", "function", "triple")
CORPORA = {"n3": 3, "n4": 4}


def thread_count() -> int:
    raw = os.environ.get("ESTARLAB_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return min(8, os.cpu_count() or 1)


def _instances(corpus: Corpus, scope: str) -> list[Instance]:
    return {
        "space": corpus.space_instances,
        "pair": corpus.pair_instances,
        "function": corpus.function_instances,
        "triple": corpus.triple_instances,
    }[scope]()


def _evaluate(claims: list[Claim], instances: list[Instance], threads: int) -> list[list]:
    def one(inst):
        return [c.check(inst) for c in claims]

    if threads <= 1 or len(instances) < 2:
        return [one(i) for i in instances]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(one, instances, chunksize=max(1, len(instances) // (threads * 8))))


# ---------------------------------------------------------------------------
# shrinking


def _drop_point(space: FiniteSpace, i: int):
    """Subspace on all points but ``i`` plus the mask translations both ways."""
    low = (1 << i) - 1

    def down(m):
        return (m & low) | ((m >> (i + 1)) << i)

    def up(m):
        return (m & low) | ((m >> i) << (i + 1))

    points = space.points[:i] + space.points[i + 1:]
    return FiniteSpace(points, frozenset(down(o) for o in space.opens)), down, up


def _restrict_op(op, sub, down, up):
    if op.name in CANONICAL:
        return canonical_op(sub, op.name)
    parent = op.space
    images = {}
    for v in sub.estar_masks.tolist():
        p = up(v)
        images[v] = down(int(op.images[p])) | v if parent.estar_flags[p] else v
    return bind_operation(sub, Table.from_masks(sub, images))


def _point_removals(inst: Instance):
    if len(inst.contexts) != 1 or inst.space.n <= 1:
        return
    ctx = inst.ctx
    for i in range(inst.space.n):
        sub, down, up = _drop_point(inst.space, i)
        g = _restrict_op(ctx.gamma, sub, down, up)
        gp = _restrict_op(ctx.gamma_prime, sub, down, up)
        yield f"drop {inst.space.points[i]}", Instance((BiopContext(sub, g, gp),), (), inst.provenance)


def _with_images(op, images: dict):
    return bind_operation(op.space, Table.from_masks(op.space, images))


def _op_simplifications(inst: Instance):
    for c, ctx in enumerate(inst.contexts):
        for slot, label in ((0, "γ"), (1, "γ′")):
            op = (ctx.gamma, ctx.gamma_prime)[slot]
            current = op.image_map()
            moved = [v for v, w in current.items() if v != w]
            if not moved:
                continue
            where = f"{label}" if len(inst.contexts) == 1 else f"{label}@{c}"
            steps = [(f"{where} := id", {v: v for v in current})]
            if len(moved) > 1:
                for v in moved:
                    steps.append((f"{where}: {op.space.fmt(v)} ↦ {op.space.fmt(v)}", {**current, v: v}))
            for label_step, images in steps:
                new = _with_images(op, images)
                pair = (new, ctx.gamma_prime) if slot == 0 else (ctx.gamma, new)
                ctxs = list(inst.contexts)
                ctxs[c] = BiopContext(ctx.space, *pair)
                yield label_step, Instance(tuple(ctxs), inst.functions, inst.provenance)


def _is_witness(result) -> bool:
    return result is not None and not (isinstance(result, str) and result == VACUOUS)


def shrink(claim: Claim, inst: Instance, witness: dict, limit: int = 200):
    """Greedy minimization: drop points, then move operation images toward the identity.

    Returns the smaller instance, its witness and the list of accepted steps.
    """
    steps = []
    for _ in range(limit):
        for gen in (_point_removals, _op_simplifications):
            hit = None
            for label, cand in gen(inst):
                try:
                    res = claim.check(cand)
                except Exception:  # a simplified instance outside the claim's domain is just skipped
                    continue
                if _is_witness(res):
                    hit = (label, cand, res)
                    break
            if hit:
                steps.append(hit[0])
                inst, witness = hit[1], hit[2]
                break
        else:
            break
    return inst, witness, steps


# ---------------------------------------------------------------------------
# description of instances


def describe_op(op) -> list:
    s = op.space
    return [[s.names(v), s.names(w)] for v, w in sorted(op.image_map().items())]


def describe_space(space: FiniteSpace) -> dict:
    return {"points": list(space.points), "opens": [space.names(o) for o in space.open_list]}


def describe_instance(inst: Instance) -> dict:
    out = {"contexts": []}
    for ctx in inst.contexts:
        out["contexts"].append({
            "space": describe_space(ctx.space),
            "gamma": ctx.gamma.name or describe_op(ctx.gamma),
            "gamma_prime": ctx.gamma_prime.name or describe_op(ctx.gamma_prime),
        })
    if inst.functions:
        out["functions"] = [f.as_names() for f in inst.functions]
    return out


# ---------------------------------------------------------------------------
# reports


def _claim_record(claim: Claim, results: list, instances: list[Instance], minimize: bool) -> dict:
    tested = len(results)
    vacuous = sum(1 for r in results if isinstance(r, str) and r == VACUOUS)
    fails = [i for i, r in enumerate(results) if _is_witness(r)]
    rec = {
        "claim_id": claim.id,
        "kind": claim.kind,
        "scope": claim.scope,
        "statement": claim.statement,
        "tested": tested,
        "non_vacuous": tested - vacuous,
        "failures": len(fails),
        "verdict": "counterexample" if fails else "all-hold",
        "notes": [],
    }
    if claim.conditional and tested - vacuous == 0:
        rec["notes"].append("hypothesis never satisfied on this corpus")
    if fails:
        first = instances[fails[0]]
        inst, wit, steps = (shrink(claim, first, results[fails[0]]) if minimize else (first, results[fails[0]], []))
        rec["witness"] = {
            "provenance": dict(first.provenance),
            "shrink_steps": steps,
            "instance": describe_instance(inst),
            "data": wit,
        }
    return rec


def run_claims(claims: list[Claim], corpus: Corpus, threads: int | None = None, minimize: bool = True) -> list[dict]:
    threads = thread_count() if threads is None else threads
    records = {}
    for scope in SCOPES:
        scoped = [c for c in claims if c.scope == scope]
        if not scoped:
            continue
        instances = _instances(corpus, scope)
        table = _evaluate(scoped, instances, threads)
        for k, c in enumerate(scoped):
            records[c.id] = _claim_record(c, [row[k] for row in table], instances, minimize)
    return [records[c.id] for c in claims]


def run_claim(claim, spec: CorpusSpec = CorpusSpec(), threads: int | None = None) -> dict:
    """Report for one claim (given by id or object) over the corpus ``spec``."""
    claim = get(claim) if isinstance(claim, str) else claim
    return run_claims([claim], Corpus(spec), threads)[0]


def corpus_spec(name: str = "n3", seed: int = 0) -> CorpusSpec:
    if name not in CORPORA:
        raise ValueError(f"unknown corpus {name!r}; expected one of {sorted(CORPORA)}")
    return CorpusSpec(max_n=CORPORA[name], pairs=1000, functions=200, seed=seed)


def verify_paper(spec: CorpusSpec | None = None, threads: int | None = None) -> dict:
    """Examples, the whole claim registry and the discrepancy notes in one report."""
    spec = spec or corpus_spec()
    corpus = Corpus(spec)
    golden = goldens.run_goldens()
    claims = run_claims(list(REGISTRY.values()), corpus, threads)
    hard_failures = [r["claim_id"] for r in claims if r["kind"] == HARD and r["failures"]]
    findings = [
        {"claim_id": r["claim_id"], "statement": r["statement"], "failures": r["failures"],
         "tested": r["tested"], "witness": r["witness"]}
        for r in claims if r["kind"] != HARD and r["failures"]
    ]
    golden_mismatches = [g["name"] for g in golden if not g["match"]]
    ok = not hard_failures and not golden_mismatches
    return {
        "corpus": spec.describe(),
        "instances": {s: len(_instances(corpus, s)) for s in SCOPES},
        "goldens": golden,
        "claims": claims,
        "findings": findings,
        "notes": {
            "split-closure": goldens.discrepancy_notes()["w-split-closure"],
            "continuity-reading": goldens.continuity_reading_note(corpus.function_instances()),
            "alternative-readings": goldens.reading_summary(),
        },
        "status": {
            "ok": ok,
            "hard_failures": hard_failures,
            "golden_mismatches": golden_mismatches,
            "audit_counterexamples": [f["claim_id"] for f in findings],
        },
    }


def exit_code(report: dict) -> int:
    return 0 if report["status"]["ok"] else 1


def _jsonable(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.bool_,)):
        return bool(o)
    raise TypeError(f"not serializable: {o!r}")


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False, default=_jsonable) + "\n"


def format_report(report: dict) -> str:
    lines = []
    lines.append(f"corpus: {report['corpus']}")
    lines.append(f"instances: {report['instances']}")
    lines.append("")
    lines.append("examples:")
    for g in report["goldens"]:
        mark = "ok  " if g["match"] else "FAIL"
        lines.append(f"  [{mark}] {g['name']}: {g['description']}")
        for k, d in g.get("mismatch", {}).items():
            lines.append(f"         {k}: expected {d['expected']}, computed {d['computed']}")
    lines.append("")
    lines.append("claims:")
    for r in report["claims"]:
        tag = "hard " if r["kind"] == HARD else "audit"
        verdict = "all-hold" if not r["failures"] else f"{r['failures']} counterexample(s)"
        lines.append(f"  {tag} {r['claim_id']:42s} {r['non_vacuous']:>5}/{r['tested']:<5} {verdict}")
        for n in r["notes"]:
            lines.append(f"        note: {n}")
    if report["findings"]:
        lines.append("")
        lines.append("findings:")
        for f in report["findings"]:
            w = f["witness"]
            lines.append(f"  {f['claim_id']}: {f['statement']}")
            lines.append(f"    minimized instance: {json.dumps(w['instance'], ensure_ascii=False)}")
            lines.append(f"    failing data: {json.dumps(w['data'], ensure_ascii=False, default=_jsonable)}")
    lines.append("")
    lines.append("notes:")
    for k, v in report["notes"].items():
        lines.append(f"  {k}: {json.dumps(v, ensure_ascii=False, sort_keys=True)}")
    st = report["status"]
    lines.append("")
    lines.append(f"status: {'ok' if st['ok'] else 'FAILED'}"
                 f" (hard failures: {st['hard_failures'] or 'none'}; example mismatches: {st['golden_mismatches'] or 'none'})")
    return "\n".join(lines)


__all__ = [
    "describe_instance", "dumps", "exit_code", "format_report", "run_claim", "run_claims", "shrink",
    "thread_count", "verify_paper", "corpus_spec",
]
