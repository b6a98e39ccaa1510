"""Command-line front end.

Exit codes: 0 success, 2 bad input, 3 budget exceeded, 4 oracle mismatch.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys

from . import connectivity, engine, normal_forms, oracle, samples
from .errors import (
    BudgetExceeded,
    InvariantViolation,
    PathspaceError,
    ValidationError,
    WordSyntaxError,
)
from .span import (
    load_graph_of_groups,
    load_multigraph,
    load_wedge,
    parse_basepoint,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_MISMATCH = 0, 2, 3, 4


class InputError(Exception):
    pass


def _read_spec(path):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        raw = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    return raw, hashlib.sha256(data).hexdigest()


def amalgam_sugar(spec, text: str) -> engine.GoGWord:
    """``G:g H:h G:g' ...`` for an amalgam; G -> H crosses as t0-, H -> G as t0+."""
    side_of = {"G": 0, "H": 1}
    tokens = text.split()
    if not tokens:
        raise WordSyntaxError("empty word")
    parts = []
    for tok in tokens:
        side, _, val = tok.partition(":")
        if side not in side_of or not val.lstrip("-").isdigit():
            raise WordSyntaxError(f"cannot read {tok!r}; expected G:<element> or H:<element>")
        parts.append((side_of[side], int(val)))
    start, head = parts[0]
    G = spec.vgroups
    if not 0 <= head < G[start].order:
        raise WordSyntaxError(f"{head} is not an element of factor {'GH'[start]}")
    syl = []
    cur = start
    for v, g in parts[1:]:
        if not 0 <= g < G[v].order:
            raise WordSyntaxError(f"{g} is not an element of factor {'GH'[v]}")
        if v == cur:
            if syl:
                e, s, x = syl[-1]
                syl[-1] = (e, s, G[v].mul[x][g])
            else:
                head = G[v].mul[head][g]
            continue
        syl.append((0, -1 if v == 1 else 1, g))
        cur = v
    return engine.GoGWord(spec, start, head, tuple(syl))


def _word(spec, raw, text):
    if raw.get("kind") == "amalgam" and ":" in text:
        return amalgam_sugar(spec, text)
    return engine.parse_word(spec, text)


def _model_for(spec, raw):
    if "model" in raw:
        return oracle.load_model(spec, raw["model"])
    for m in samples.all_models().values():
        if m.spec == spec:
            return m
    return None


# -- commands ------------------------------------------------------------------
# each returns (results dict, exit code, text lines)

def cmd_census(args, raw):
    spec = load_graph_of_groups(raw)
    b = parse_basepoint(args.source)
    c = parse_basepoint(args.target) if args.target is not None else None
    f = engine.filtration(spec, b, c, args.stages, budget=args.budget)
    rows = [{"n": s.n, "z": s.z_count, "j": s.j_count, "new_reduced": s.new_reduced,
             "r": s.r_count, "zigzag_length": s.zigzag_length} for s in f.stages]
    results = {"from": str(b), "to": None if c is None else str(c), "step": f.step,
               "stages": rows}
    lines = [f"fibre {b} -> {'any vertex' if c is None else c}  (r steps back {f.step})",
             f"{'n':>4} {'z':>10} {'j':>10} {'new':>8} {'r':>8} {'zigzag':>7}"]
    lines += [f"{r['n']:>4} {r['z']:>10} {r['j']:>10} {r['new_reduced']:>8} {r['r']:>8} "
              f"{r['zigzag_length']:>7}" for r in rows]
    return results, EXIT_OK, lines


def cmd_word_eq(args, raw):
    spec = load_graph_of_groups(raw)
    w1, w2 = _word(spec, raw, args.word1), _word(spec, raw, args.word2)
    eq = engine.word_equal(w1, w2)
    n1, n2 = engine.normalize(w1), engine.normalize(w2)
    results = {"equal": eq, "normal_form_1": str(n1), "normal_form_2": str(n2)}
    return results, EXIT_OK, ["true" if eq else "false", f"  {n1}", f"  {n2}"]


def cmd_normal_form(args, raw):
    spec = load_graph_of_groups(raw)
    w = _word(spec, raw, args.word)
    nf = normal_forms.canonical_form(w)
    results = {"input": str(w), "normal_form": str(nf), "crossings": nf.crossings}
    return results, EXIT_OK, [str(nf)]


def cmd_pi1(args, raw):
    g = load_multigraph(raw)
    if args.vertex is not None and not 0 <= args.vertex < g.n_vertices:
        raise InputError(f"vertex {args.vertex} out of range")
    rank = normal_forms.pi1_rank(g, args.vertex)
    value = "disconnected" if rank is normal_forms.DISCONNECTED else rank
    return {"vertex": args.vertex, "rank": value}, EXIT_OK, [str(value)]


def cmd_is_tree(args, raw):
    g = load_multigraph(raw)
    t = normal_forms.is_tree(g)
    return {"is_tree": t}, EXIT_OK, ["true" if t else "false"]


def cmd_splitting(args, raw):
    w = load_wedge(raw)
    if args.length < 0:
        raise InputError("--length must be nonnegative")
    n = normal_forms.splitting_census(w, args.length, budget=args.budget)
    return {"length": args.length, "count": n}, EXIT_OK, [str(n)]


def cmd_connectivity(args, raw):
    k, l, m = (connectivity.parse_degree(x) for x in (args.k, args.l, args.m))
    val = connectivity.jz_conn(args.stage, k, l, m)
    tail = connectivity.tail_conn(args.stage, k, l, m)
    results = {"stage": args.stage, "k": connectivity.fmt(k), "l": connectivity.fmt(l),
               "m": connectivity.fmt(m), "connectivity": connectivity.fmt(val),
               "tail_connectivity": connectivity.fmt(tail)}
    return results, EXIT_OK, [connectivity.fmt(val)]


def cmd_oracle_check(args, raw):
    spec = load_graph_of_groups(raw)
    model = _model_for(spec, raw)
    if model is None:
        raise InputError("no concrete model: add a \"model\" block to the spec file")
    from .span import vertex

    checks = []
    agree = oracle.agreement_check(model, args.radius)
    checks.append({"check": "word_equal vs evaluation", "mode": agree.mode,
                   "words": agree.words, "ok": agree.ok,
                   "detail": [list(map(str, x)) for x in agree.mismatches[:5]]})
    for v in range(spec.n_vertices):
        ball = oracle.ball_enumerate(model, spec, vertex(v), args.radius, budget=args.budget)
        f = engine.filtration(spec, vertex(v), None, args.radius, budget=args.budget)
        counts = [s.new_reduced for s in f.stages]
        checks.append({"check": f"ball census from v{v}", "ball": ball.counts,
                       "filtration": counts, "ok": ball.counts == counts})
    rng = random.Random(args.seed)
    bad = []
    for _ in range(args.samples):
        v = rng.randrange(spec.n_vertices)
        w = samples.random_word(spec, v, rng.randint(0, min(args.radius, 6)), rng)
        if w is not None and not oracle.reduction_order_oracle(w):
            bad.append(str(w))
    checks.append({"check": "reduction order", "words": args.samples, "ok": not bad,
                   "detail": bad[:5]})
    ok = all(c["ok"] for c in checks)
    results = {"model": model.name or model.kind, "radius": args.radius, "ok": ok,
               "checks": checks}
    lines = [f"{'ok  ' if c['ok'] else 'FAIL'} {c['check']}" for c in checks]
    lines.append("all checks passed" if ok else "oracle mismatch")
    return results, EXIT_OK if ok else EXIT_MISMATCH, lines


# -- plumbing --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pathspace",
                                description="Path spaces of graphs of groups.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, spec=True, help=None):
        sp = sub.add_parser(name, help=help)
        if spec:
            sp.add_argument("spec", help="spec file (JSON)")
        sp.add_argument("--json", action="store_true", help="emit a JSON report")
        sp.set_defaults(func=fn, needs_spec=spec)
        return sp

    sp = add("census", cmd_census, help="stage-by-stage census of a fibre")
    sp.add_argument("--from", dest="source", default="v0", help="v<i> or e<i> (default v0)")
    sp.add_argument("--to", dest="target", default=None,
                    help="v<i> or e<i>; omit to allow any end vertex")
    sp.add_argument("--stages", type=int, default=6)
    sp.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)

    sp = add("word-eq", cmd_word_eq, help="decide equality of two words")
    sp.add_argument("word1")
    sp.add_argument("word2")

    sp = add("normal-form", cmd_normal_form, help="canonical form of a word")
    sp.add_argument("word")

    sp = add("pi1", cmd_pi1, help="rank of the fundamental group of the underlying graph")
    sp.add_argument("--vertex", type=int, default=None)

    add("is-tree", cmd_is_tree, help="is the underlying graph a tree")

    sp = add("splitting", cmd_splitting, help="free-product elements of a given syllable length")
    sp.add_argument("--length", type=int, required=True)
    sp.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)

    sp = add("connectivity", cmd_connectivity, spec=False,
             help="connectivity estimate for a stage map")
    sp.add_argument("--stage", type=int, required=True)
    sp.add_argument("--k", required=True)
    sp.add_argument("--l", required=True)
    sp.add_argument("--m", required=True)

    sp = add("oracle-check", cmd_oracle_check, help="compare the engine with a concrete model")
    sp.add_argument("--radius", type=int, default=4)
    sp.add_argument("--samples", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--budget", type=int, default=engine.DEFAULT_BUDGET)
    return p


def _echo(args):
    skip = {"func", "needs_spec", "json", "command"}
    return {k: v for k, v in vars(args).items() if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        raw, digest = _read_spec(args.spec) if args.needs_spec else ({}, None)
        results, code, lines = args.func(args, raw)
    except (InputError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:  # bad numeric flags and the like
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"error: internal check failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except PathspaceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.json:
        report = {"command": args.command, "args": _echo(args), "spec_digest": digest,
                  "results": results}
        out = json.dumps(report, indent=2) + "\n"
    else:
        out = "\n".join(lines) + "\n"
    sys.stdout.write(out)
    sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
