"""perfcode command line.

    perfcode reproduce --n 1
    perfcode check --group sym:3 --subgroup "(12)"
    perfcode enumerate --group quaternion:8
    perfcode graph-check --group cyclic:6 --s 1,5 --c 0,3

Exit codes: reproduce 0 = all checks pass, 1 = some fail; check 0 = perfect
code, 1 = not, 3 = inconclusive; graph-check 0/1; 2 = bad input throughout.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import codes, groups, repro
from .errors import LimitExceeded, NotEnumerableError, PerfCodeError

EXIT_USAGE = 2
EXIT_INCONCLUSIVE = 3


def split_elements(text: str, G: groups.Group) -> list[str]:
    """Split a generator list. Affine literals are separated by whitespace
    or '|'; everything else by commas outside parentheses."""
    text = text.strip()
    if not text:
        return []
    if isinstance(G, groups.AffineGroup):
        return text.replace("|", " ").split()
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    out.append(cur)
    return [x.strip() for x in out if x.strip()]


def parse_elements(G: groups.Group, values) -> list[int]:
    items = []
    for v in values or []:
        items.extend(split_elements(v, G))
    return [G.parse_element(x) for x in items]


def emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def cmd_reproduce(args) -> int:
    if args.n not in (1, 2, 3):
        print(f"error: --n must be 1, 2 or 3 (got {args.n})", file=sys.stderr)
        return EXIT_USAGE
    rep = repro.reproduce(args.n, seed=args.seed, full_scan=not args.no_full_scan, trials=args.trials)
    lines = [f"n: {rep.n}", f"q: {rep.q}", f"modulus: {rep.modulus:x}"]
    for c in rep.checks:
        extra = f" ({c.millis:.1f} ms)" if args.timings else ""
        lines.append(f"check {c.name}: {'pass' if c.passed else 'FAIL'}{extra}")
        for k, v in c.data.items():
            lines.append(f"  {k}: {v}")
    lines += [f"note: {x}" for x in rep.notes]
    passed = sum(c.passed for c in rep.checks)
    lines.append(f"overall: {'pass' if rep.overall else 'FAIL'} ({passed}/{len(rep.checks)} checks)")
    emit(args, rep.to_json(args.timings), lines)
    return 0 if rep.overall else 1


def _report_lines(G, rep: codes.DecisionReport, timings: bool) -> list[str]:
    lab = G.label
    lines = [f"group: {rep.group}", "subgroup: " + " ".join(lab(x) for x in rep.subgroup),
             f"verdict: {rep.verdict}"]
    for m in rep.methods:
        extra = f" [{m.detail}]" if m.detail else ""
        if timings:
            extra += f" ({m.millis:.1f} ms)"
        lines.append(f"method {m.name}: {m.outcome}{extra}")
    if rep.phi is not None and rep.phi.counterexample is not None:
        lines.append(f"phi_counterexample: {lab(rep.phi.counterexample)}")
    if rep.transversal is not None:
        lines.append("transversal: " + " ".join(lab(x) for x in rep.transversal.ids()))
    if rep.connection_set is not None:
        lines.append("connection_set: " + " ".join(lab(x) for x in rep.connection_set.ids()))
    return lines


def cmd_check(args) -> int:
    G = groups.make_named(args.group)
    gens = parse_elements(G, args.subgroup)
    if isinstance(G, groups.AffineGroup) and args.hq:
        H = groups.make_hq(G.tower, G)
    else:
        H = groups.subgroup_closure(G, gens)
    policy = "cross_validate" if args.cross_validate else "decide"
    kw = {}
    if args.limit is not None:
        kw = {"backtrack_limit": args.limit, "matching_limit": args.limit}
    rep = codes.is_perfect_code(G, H, policy, methods=args.method, **kw)
    emit(args, rep.to_json(args.timings), _report_lines(G, rep, args.timings))
    return {"perfect_code": 0, "not_perfect_code": 1}.get(rep.verdict, EXIT_INCONCLUSIVE)


def cmd_enumerate(args) -> int:
    G = groups.make_named(args.group)
    subs = groups.all_subgroups(G)
    policy = "cross_validate" if args.cross_validate else "decide"
    rows, lines = [], [f"group: {G.spec}", f"subgroups: {len(subs)}"]
    for H in subs:
        rep = codes.is_perfect_code(G, H, policy)
        normal = groups.is_normal(G, H)
        rows.append({"order": H.order, "elements": [format(x, "x") for x in H.ids()],
                     "normal": normal, "verdict": rep.verdict,
                     "methods": [m.name for m in rep.methods if m.outcome not in ("skipped", "inconclusive")]})
        lines.append(f"order {H.order} {'normal' if normal else 'non-normal'} "
                     f"{{{', '.join(G.label(x) for x in H.ids())}}}: {rep.verdict}")
    emit(args, {"group": G.spec, "subgroups": rows}, lines)
    return 0


def cmd_graph_check(args) -> int:
    G = groups.make_named(args.group)
    S = parse_elements(G, [args.s])
    C = parse_elements(G, [args.c])
    codes.check_connection_set(G, S)
    ok = codes.cayley_perfect_code_check(G, S, C, args.t)
    emit(args, {"group": G.spec, "t": args.t, "connection_set": [format(x, "x") for x in sorted(set(S))],
                "code": [format(x, "x") for x in sorted(set(C))], "perfect_code": ok},
         [f"group: {G.spec}", f"t: {args.t}", f"perfect_code: {str(ok).lower()}"])
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="perfcode", description="Subgroup perfect codes of finite groups.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized validation")
    common.add_argument("--timings", action="store_true",
                        help="include wall-clock timings (output is then not reproducible)")
    sub = p.add_subparsers(dest="command", required=True)

    r = sub.add_parser("reproduce", parents=[common], help="replay the AGL(2,q^2) / H_q counterexample")
    r.add_argument("--n", type=int, required=True, help="q = 2^n, n in 1..3")
    r.add_argument("--no-full-scan", action="store_true", help="skip the Phi scan over all of G at n <= 2")
    r.add_argument("--trials", type=int, default=10**5, help="randomized conjugation trials (n >= 2)")
    r.set_defaults(func=cmd_reproduce)

    c = sub.add_parser("check", parents=[common], help="decide whether <generators> is a perfect code")
    c.add_argument("--group", required=True)
    c.add_argument("--subgroup", action="append", default=[],
                   help="generators; repeatable, or comma separated (affine: 'a1,a2;A11,A12,A21,A22')")
    c.add_argument("--hq", action="store_true", help="use H_q as the subgroup (agl groups)")
    c.add_argument("--method", action="append", choices=codes.METHODS)
    c.add_argument("--cross-validate", action="store_true")
    c.add_argument("--limit", type=int, help="max cosets for transversal searches")
    c.set_defaults(func=cmd_check)

    e = sub.add_parser("enumerate", parents=[common], help="verdict for every subgroup (order <= 24)")
    e.add_argument("--group", required=True)
    e.add_argument("--cross-validate", action="store_true")
    e.set_defaults(func=cmd_enumerate)

    g = sub.add_parser("graph-check", parents=[common], help="is C a perfect t-code of Cay(G, S)?")
    g.add_argument("--group", required=True)
    g.add_argument("--s", required=True, help="connection set")
    g.add_argument("--c", required=True, help="code")
    g.add_argument("--t", type=int, default=1)
    g.set_defaults(func=cmd_graph_check)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LimitExceeded, NotEnumerableError) as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE if args.command == "check" else EXIT_USAGE
    except (PerfCodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
