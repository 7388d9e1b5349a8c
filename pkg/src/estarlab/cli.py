"""Command-line interface.

Exit codes: 0 success, 1 a hard invariant failed or an example did not
reproduce, 2 usage, parse or I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .bioperations import BiopContext
from .morphisms import continuity_conditions, is_bi_closed_map
from .space import SpaceError, SpaceMismatch
from .verifier import runner
from .verifier.claims import HARD, REGISTRY, UnknownClaim, get
from .verifier.corpus import CANONICAL, Corpus, canonical_op
from .workspace import Workspace, WorkspaceError, load, resolve_codomain

KINDS = ("estar", "biopen", "single", "classic")
WHICH = ("pointwise", "lattice", "estar", "interior")


class UsageError(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", nargs="?", const="-", default=argparse.SUPPRESS, metavar="PATH",
                   help="emit JSON (to PATH, or stdout when no path is given)")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="corpus seed (default 0)")
    p.add_argument("--corpus", choices=sorted(runner.CORPORA), default=argparse.SUPPRESS,
                   help="n3: all topologies on ≤3 points; n4: on ≤4 points")
    return p


def _ops_args(p):
    p.add_argument("--gamma", default="gamma", help="operation name for γ (default: gamma)")
    p.add_argument("--gamma-prime", default="gamma_prime", help="operation name for γ′ (default: gamma_prime)")


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = argparse.ArgumentParser(prog="estarlab", description=__doc__.splitlines()[0], parents=[common])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("families", parents=[common], help="list a family of subsets")
    p.add_argument("doc")
    _ops_args(p)
    p.add_argument("--kind", choices=KINDS, default="biopen")

    p = sub.add_parser("closure", parents=[common], help="closure or interior of a subset")
    p.add_argument("doc")
    p.add_argument("--set", required=True, dest="subset", help="comma-separated point names")
    _ops_args(p)
    p.add_argument("--which", choices=WHICH, default="pointwise")

    p = sub.add_parser("interior", parents=[common], help="bi-interior of a subset")
    p.add_argument("doc")
    p.add_argument("--set", required=True, dest="subset")
    _ops_args(p)

    p = sub.add_parser("check", parents=[common], help="run one claim over the corpus")
    p.add_argument("claim_id", nargs="?")
    p.add_argument("--list", action="store_true", help="list registered claims")

    for name, helptext in (("continuity", "the seven continuity conditions of a function"),
                           ("closed-map", "whether a function maps bi-closed sets to bi-closed sets")):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("doc_dom")
        p.add_argument("doc_cod", nargs="?")
        p.add_argument("--fn", required=True)
        p.add_argument("--ops", default="gamma,gamma_prime,gamma,gamma_prime", help="γ,γ′,β,β′")
        if name == "continuity":
            p.add_argument("--strict-reading", action="store_true",
                           help="use U^γ ∩ V^γ instead of U^γ ∩ V^γ′ on the domain side")

    p = sub.add_parser("verify-paper", parents=[common], help="examples plus every claim over the corpus")

    p = sub.add_parser("search", parents=[common], help="list corpus instances that violate a claim")
    p.add_argument("claim_id")
    p.add_argument("--limit", type=int, default=5)
    return ap


# ---------------------------------------------------------------------------
# helpers


def _load(path) -> Workspace:
    try:
        return load(path)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _op(ws: Workspace, name: str):
    if name not in ws.operations and name in CANONICAL:
        return canonical_op(ws.space, name)
    return ws.operation(name)


def _ctx(ws, g, gp) -> BiopContext:
    return BiopContext(ws.space, _op(ws, g), _op(ws, gp))


def _subset(ws: Workspace, raw: str) -> int:
    raw = raw.strip().strip("{}[]")
    names = [p.strip() for p in raw.split(",") if p.strip()]
    try:
        return ws.space.mask(names)
    except SpaceError as e:
        raise UsageError(str(e)) from None


def _fmt_family(space, masks) -> str:
    return ", ".join("[" + ",".join(space.names(m)) + "]" for m in masks)


def _emit(args, payload, text: str) -> None:
    target = getattr(args, "json", None)
    if target is None:
        print(text)
        return
    body = json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False, default=runner._jsonable) + "\n"
    if target == "-":
        sys.stdout.write(body)
        return
    try:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(body)
    except OSError as e:
        raise UsageError(f"cannot write {target}: {e.strerror}") from None
    print(text)


def _spec(args):
    return runner.corpus_spec(getattr(args, "corpus", "n3"), getattr(args, "seed", 0))


# ---------------------------------------------------------------------------
# commands


def cmd_families(args) -> int:
    ws = _load(args.doc)
    s = ws.space
    if args.kind == "estar":
        flags = s.estar_flags
    elif args.kind == "single":
        flags = _op(ws, args.gamma).single_open_flags
    else:
        ctx = _ctx(ws, args.gamma, args.gamma_prime)
        flags = ctx.biopen_flags if args.kind == "biopen" else ctx.classic_biopen_flags
    masks = [i for i in range(s.size) if flags[i]]
    _emit(args, {"kind": args.kind, "family": [s.names(m) for m in masks]}, _fmt_family(s, masks))
    return 0


def cmd_closure(args) -> int:
    ws = _load(args.doc)
    s, a = ws.space, _subset(ws, args.subset)
    if args.which == "estar":
        r = int(s.estar_closure_table[a])
    else:
        ctx = _ctx(ws, args.gamma, args.gamma_prime)
        table = {"pointwise": ctx.pointwise_table, "lattice": ctx.lattice_table, "interior": ctx.interior_table}
        r = int(table[args.which][a])
    _emit(args, {"which": args.which, "set": s.names(a), "result": s.names(r)}, "[" + ",".join(s.names(r)) + "]")
    return 0


def cmd_interior(args) -> int:
    args.which = "interior"
    return cmd_closure(args)


def _function_setup(args):
    dom_ws = _load(args.doc_dom)
    if args.fn not in dom_ws.functions:
        raise WorkspaceError(f"unknown function {args.fn!r}", f"/functions/{args.fn}")
    cod_ws = _load(args.doc_cod) if args.doc_cod else resolve_codomain(dom_ws, args.fn)
    ops = [o.strip() for o in args.ops.split(",")]
    if len(ops) != 4:
        raise UsageError("--ops expects four names: γ,γ′,β,β′")
    f = dom_ws.function(args.fn, cod_ws.space)
    return f, _ctx(dom_ws, ops[0], ops[1]), _ctx(cod_ws, ops[2], ops[3])


def cmd_continuity(args) -> int:
    f, dom, cod = _function_setup(args)
    v = continuity_conditions(f, dom, cod, strict=args.strict_reading)
    lines = []
    for k, val in enumerate(v.vector, start=1):
        line = f"c{k}: {'true' if val else 'false'}"
        if f"c{k}" in v.witnesses:
            line += "  " + json.dumps(v.witnesses[f"c{k}"], ensure_ascii=False)
        lines.append(line)
    payload = {"function": f.as_names(), "strict_reading": args.strict_reading, **v.as_dict()}
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_closed_map(args) -> int:
    f, dom, cod = _function_setup(args)
    v = is_bi_closed_map(f, dom, cod)
    text = "bi-closed: " + ("true" if v else "false")
    if not v:
        text += "  " + json.dumps(v.witness, ensure_ascii=False)
    _emit(args, {"function": f.as_names(), "bi_closed": bool(v), "witness": v.witness}, text)
    return 0


def cmd_check(args) -> int:
    if args.list or not args.claim_id:
        rows = [{"claim_id": c.id, "kind": c.kind, "scope": c.scope, "statement": c.statement}
                for c in REGISTRY.values()]
        _emit(args, rows, "\n".join(f"{r['kind']:5s} {r['scope']:8s} {r['claim_id']:42s} {r['statement']}" for r in rows))
        return 0
    claim = get(args.claim_id)
    rec = runner.run_claim(claim, _spec(args))
    text = (f"{rec['claim_id']} ({rec['kind']}): {rec['verdict']}, "
            f"{rec['non_vacuous']}/{rec['tested']} non-vacuous instances, {rec['failures']} failing")
    if "witness" in rec:
        text += "\n" + json.dumps(rec["witness"], ensure_ascii=False, indent=2)
    _emit(args, rec, text)
    return 1 if claim.kind == HARD and rec["failures"] else 0


def cmd_search(args) -> int:
    claim = get(args.claim_id)
    corpus = Corpus(_spec(args))
    instances = runner._instances(corpus, claim.scope)
    hits = []
    for inst in instances:
        res = claim.check(inst)
        if runner._is_witness(res):
            hits.append({"provenance": dict(inst.provenance), "instance": runner.describe_instance(inst), "data": res})
            if len(hits) >= args.limit:
                break
    text = "\n".join(json.dumps(h, ensure_ascii=False) for h in hits) or "no counterexample in this corpus"
    _emit(args, {"claim_id": claim.id, "counterexamples": hits}, text)
    return 0


def cmd_verify_paper(args) -> int:
    t0 = time.perf_counter()
    report = runner.verify_paper(_spec(args))
    target = getattr(args, "json", None)
    if target == "-":
        sys.stdout.write(runner.dumps(report))
    else:
        if target is not None:
            try:
                with open(target, "w", encoding="utf-8") as fh:
                    fh.write(runner.dumps(report))
            except OSError as e:
                raise UsageError(f"cannot write {target}: {e.strerror}") from None
        print(runner.format_report(report))
    print(f"elapsed: {time.perf_counter() - t0:.2f}s", file=sys.stderr)
    return runner.exit_code(report)


COMMANDS = {
    "families": cmd_families,
    "closure": cmd_closure,
    "interior": cmd_interior,
    "check": cmd_check,
    "continuity": cmd_continuity,
    "closed-map": cmd_closed_map,
    "verify-paper": cmd_verify_paper,
    "search": cmd_search,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except WorkspaceError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except UnknownClaim as e:
        print(f"error: unknown claim {e.args[0]!r}", file=sys.stderr)
        return 2
    except (UsageError, SpaceMismatch, SpaceError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
