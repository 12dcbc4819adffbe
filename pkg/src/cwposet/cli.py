"""Command line front end.

Subcommands: gen, check, homology, shell, certify, dk.  Posets and
complexes travel as small JSON documents and `-` means standard input.
Reports go to standard output, diagnostics and timings to standard error.
Exit codes: 0 all requested checks pass, 1 a check failed, 2 inconclusive
within budget, 3 input or usage error.

JSON reports are byte-identical for identical inputs and flags; timing
lives only on the diagnostic stream, so the report carries timing_ms null.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import certify as certify_mod
from .certify import cw_certify
from .complexes import ComplexError, complex_from_doc, complex_to_doc
from .generators import (
    OutOfRange,
    UnknownName,
    boolean_lattice,
    bruhat_interval,
    crosspolytope_face_poset,
    named_triangulation,
)
from .homology import reduced_homology
from .invariants import (
    MissingBounds,
    hall_identity_violations,
    is_eulerian,
    is_thin,
    mobius,
)
from .poset import PosetError, poset_from_doc, poset_to_doc
from .shelling import (
    BUDGET_EXHAUSTED,
    CW_CERTIFIED,
    DEFAULT_BUDGET,
    FOUND,
    INCONCLUSIVE,
    NONE,
    danaraj_klee_check,
    find_shelling,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="cwposet", description=__doc__.splitlines()[0], add_help=True)
    sub = parser.add_subparsers(dest="command")

    def common(p, budget=False, json_out=True):
        p.add_argument("--threads", type=int, default=1, help="worker hint; output is deterministic regardless")
        if budget:
            p.add_argument("--budget", type=int, default=None, help="search node budget")
            p.add_argument("--shelling-budget", type=int, default=None, help="shelling search node budget")
        if json_out:
            p.add_argument("--json", metavar="OUT", default=None, help="write the JSON report to OUT, - for stdout")

    g = sub.add_parser("gen", help="write a generated poset or complex document")
    g.add_argument("family", choices=["boolean", "crosspoly", "bruhat", "named"])
    g.add_argument("params", nargs="*", help="boolean N | crosspoly N | bruhat N U W | named NAME [D]")
    common(g, json_out=False)

    c = sub.add_parser("check", help="poset checks: thinness, Eulerian, Moebius table, Hall identity")
    c.add_argument("file")
    c.add_argument("--thin", action="store_true")
    c.add_argument("--eulerian", action="store_true")
    c.add_argument("--mobius", action="store_true")
    c.add_argument("--hall", action="store_true")
    common(c)

    h = sub.add_parser("homology", help="reduced integral homology of a complex")
    h.add_argument("file")
    common(h)

    s = sub.add_parser("shell", help="search a shelling order of a complex")
    s.add_argument("file")
    common(s, budget=True)

    ce = sub.add_parser("certify", help="rank-recursive sphere certification of a poset")
    ce.add_argument("file")
    common(ce, budget=True)

    d = sub.add_parser("dk", help="thin plus shellable route on a poset")
    d.add_argument("file")
    common(d, budget=True)
    return parser


def _read_doc(path: str, stdin) -> dict:
    if path == "-":
        text = stdin.read()
        where = "<stdin>"
    else:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
        where = path
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise PosetError(f"{where}: malformed JSON at line {e.lineno} column {e.colno} (char {e.pos})") from None


def _emit_json(report: dict, target: str, stdout) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if target == "-":
        stdout.write(text)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_gen(args, stdout, stderr) -> int:
    fam, params = args.family, args.params
    try:
        if fam == "boolean":
            (n,) = params
            doc = poset_to_doc(boolean_lattice(int(n)))
        elif fam == "crosspoly":
            (n,) = params
            doc = poset_to_doc(crosspolytope_face_poset(int(n)))
        elif fam == "bruhat":
            n, u, w = params
            doc = poset_to_doc(bruhat_interval(int(n), u, w))
        else:
            name = params[0]
            param = int(params[1]) if len(params) > 1 else None
            doc = complex_to_doc(named_triangulation(name, param).complex)
    except (ValueError, IndexError) as e:
        print(f"gen: {e}", file=stderr)
        return EXIT_INPUT
    stdout.write(json.dumps(doc, indent=2) + "\n")
    return EXIT_OK


def _cmd_check(args, stdout, stderr, stdin) -> int:
    P = poset_from_doc(_read_doc(args.file, stdin))
    wanted = [name for name, on in
              (("thin", args.thin), ("eulerian", args.eulerian), ("mobius", args.mobius), ("hall", args.hall))
              if on] or ["thin", "eulerian", "mobius", "hall"]
    checks = []
    for name in wanted:
        t0 = time.perf_counter()
        if name == "thin":
            v = is_thin(P)
            witness = [f"({x}, {y}) has {len(mid)} elements" for x, y, mid in v.violations]
            checks.append({"name": "thin", "verdict": "pass" if v.ok else "fail", "witnesses": witness})
        elif name == "eulerian":
            try:
                v = is_eulerian(P)
                witness = [] if v.ok else [f"mu({v.witness[0]}, {v.witness[1]}) = {v.witness[2]}, want {v.witness[3]}"]
                checks.append({"name": "eulerian", "verdict": "pass" if v.ok else "fail", "witnesses": witness})
            except MissingBounds as e:
                checks.append({"name": "eulerian", "verdict": "fail", "witnesses": [str(e)]})
        elif name == "mobius":
            table = mobius(P)
            lines = [f"mu({x}, {y}) = {v}" for (x, y), v in sorted(table.items())]
            checks.append({"name": "mobius", "verdict": "pass", "witnesses": [], "table": lines})
        else:
            bad = hall_identity_violations(P)
            witness = [f"({x}, {y}): mu = {m}, chi = {c}" for x, y, m, c in bad]
            checks.append({"name": "hall", "verdict": "pass" if not bad else "fail", "witnesses": witness})
        print(f"check {name}: {time.perf_counter() - t0:.3f}s", file=stderr)
    for c in checks:
        print(f"{c['name']}: {c['verdict']}", file=stdout)
        for line in c.get("table", []):
            print(f"  {line}", file=stdout)
        for wline in c["witnesses"]:
            print(f"  witness: {wline}", file=stdout)
    code = EXIT_OK if all(c["verdict"] == "pass" for c in checks) else EXIT_FAIL
    if args.json:
        for c in checks:
            c["timing_ms"] = None
        _emit_json({"command": "check", "input": args.file, "checks": checks, "exit_code": code},
                   args.json, stdout)
    return code


def _cmd_homology(args, stdout, stderr, stdin) -> int:
    K = complex_from_doc(_read_doc(args.file, stdin))
    t0 = time.perf_counter()
    H = reduced_homology(K)
    print(f"homology: {time.perf_counter() - t0:.3f}s", file=stderr)
    groups = {i: H.group(i) for i in range(-1, K.dim + 1)}
    for i, g in groups.items():
        print(f"H~{i} = {g}", file=stdout)
    if args.json:
        _emit_json({"command": "homology", "input": args.file,
                    "groups": {str(i): g for i, g in groups.items()},
                    "timing_ms": None, "exit_code": EXIT_OK}, args.json, stdout)
    return EXIT_OK


def _cmd_shell(args, stdout, stderr, stdin) -> int:
    K = complex_from_doc(_read_doc(args.file, stdin))
    budget = args.shelling_budget or args.budget or DEFAULT_BUDGET
    t0 = time.perf_counter()
    res = find_shelling(K, budget)
    print(f"shelling search: {time.perf_counter() - t0:.3f}s, {res.nodes} nodes", file=stderr)
    if res.status == FOUND:
        order = [list(K.facets[i]) for i in res.order]
        print(json.dumps(order), file=stdout)
        code = EXIT_OK
    elif res.status == NONE:
        print("not shellable: search space exhausted", file=stdout)
        code = EXIT_FAIL
    else:
        print("inconclusive: node budget exhausted", file=stdout)
        code = EXIT_INCONCLUSIVE
    if args.json:
        _emit_json({"command": "shell", "input": args.file, "status": res.status,
                    "order": [list(K.facets[i]) for i in res.order] if res.order else None,
                    "timing_ms": None, "exit_code": code}, args.json, stdout)
    return code


def _cmd_certify(args, stdout, stderr, stdin) -> int:
    P = poset_from_doc(_read_doc(args.file, stdin))
    pi1_budget = args.budget or 10**6
    shelling_budget = args.shelling_budget or 10**6
    t0 = time.perf_counter()
    cert = cw_certify(P, pi1_budget=pi1_budget, shelling_budget=shelling_budget)
    print(f"certify: {time.perf_counter() - t0:.3f}s", file=stderr)
    by_status: dict[str, int] = {}
    for c in cert.intervals.values():
        by_status[c.status] = by_status.get(c.status, 0) + 1
    print(f"bottom: {cert.bottom}", file=stdout)
    print(f"intervals: " + ", ".join(f"{k}={v}" for k, v in sorted(by_status.items())), file=stdout)
    print(f"cw_poset: {cert.status}", file=stdout)
    if cert.witness:
        print(f"  witness: {cert.witness}", file=stdout)
    if cert.global_top is not None and not cert.global_top["pseudomanifold"]:
        print(f"  note: top structure is not a pseudomanifold"
              + (f" ({cert.global_top.get('witness')})" if cert.global_top.get("witness") else ""),
              file=stdout)
    if args.json:
        _emit_json(cert.to_doc(), args.json, stdout)
    return {True: EXIT_OK, False: EXIT_FAIL, None: EXIT_INCONCLUSIVE}[cert.cw_poset]


def _cmd_dk(args, stdout, stderr, stdin) -> int:
    P = poset_from_doc(_read_doc(args.file, stdin))
    budget = args.shelling_budget or args.budget or DEFAULT_BUDGET
    t0 = time.perf_counter()
    rep = danaraj_klee_check(P, budget)
    print(f"dk: {time.perf_counter() - t0:.3f}s", file=stderr)
    shelled = sum(1 for e in rep.intervals if e.status == FOUND)
    print(f"thin: {'pass' if rep.thin.ok else 'fail'}", file=stdout)
    print(f"intervals shelled: {shelled}/{len(rep.intervals)}", file=stdout)
    print(f"verdict: {rep.verdict} (bottom intervals: {rep.verdict_bottom})", file=stdout)
    if rep.witness:
        print(f"  witness: {rep.witness}", file=stdout)
    if args.json:
        _emit_json({"command": "dk", "input": args.file, "thin": rep.thin.ok,
                    "verdict": rep.verdict, "verdict_bottom": rep.verdict_bottom,
                    "witness": rep.witness,
                    "intervals": [{"lower": e.lower, "upper": e.upper, "rank_diff": e.rank_diff,
                                   "status": e.status} for e in rep.intervals],
                    "timing_ms": None,
                    "exit_code": {CW_CERTIFIED: EXIT_OK, FAILED: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[rep.verdict]},
                   args.json, stdout)
    return {CW_CERTIFIED: EXIT_OK, FAILED: EXIT_FAIL, INCONCLUSIVE: EXIT_INCONCLUSIVE}[rep.verdict]


def run(argv, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"usage error: {e}", file=stderr)
        parser.print_usage(stderr)
        return EXIT_INPUT
    if args.command is None:
        parser.print_usage(stderr)
        return EXIT_INPUT
    if getattr(args, "threads", 1) < 1:
        print("usage error: --threads must be at least 1", file=stderr)
        return EXIT_INPUT
    try:
        if args.command == "gen":
            return _cmd_gen(args, stdout, stderr)
        if args.command == "check":
            return _cmd_check(args, stdout, stderr, stdin)
        if args.command == "homology":
            return _cmd_homology(args, stdout, stderr, stdin)
        if args.command == "shell":
            return _cmd_shell(args, stdout, stderr, stdin)
        if args.command == "certify":
            return _cmd_certify(args, stdout, stderr, stdin)
        if args.command == "dk":
            return _cmd_dk(args, stdout, stderr, stdin)
    except (PosetError, ComplexError, MissingBounds, OutOfRange, UnknownName, OSError) as e:
        print(f"input error: {e}", file=stderr)
        return EXIT_INPUT
    raise AssertionError("unreachable")


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
