"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 inconclusive (the gcd search for
N(G) did not stabilize), 3 a verification check failed.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

from . import __version__
from .classify import (
    COMPUTED_PROVENANCE,
    TWISTS,
    check_characteristic,
    classify,
    table1_render,
    twisted_classify,
)
from .dynkin import DEFAULT_BOUND, group_index, irrep_data, orbit_index_closed
from .errors import CapExceeded, Inconclusive, InvalidInput, OrbitTooLarge
from .lattice import compute_E, compute_Eq, fundamental_group, parse_group_spec
from .rootsys import build_root_system, dual_coxeter_number, orbit_size, weight_from_string
from .verify import run_suite

EXIT_OK, EXIT_INVALID, EXIT_INCONCLUSIVE, EXIT_FAILED = 0, 1, 2, 3

TABLE1_COLUMNS = ("family", "params", "N", "E", "ratio_primes", "degenerate_primes", "zero_primes", "flags")

GROUP_HELP = (
    "group spec: SL9/mu3, SL4, PGL5, Sp10, PSp10, SO8, Spin11, PSO8, HSpin12, "
    "or <type><rank>sc|ad such as E6sc, E7ad, B3ad (E8, F4, G2 need no suffix)"
)


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting, so bad usage maps to exit 1."""

    def error(self, message):
        raise InvalidInput(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="traceform", description="Dynkin indices, E(G), and trace-form classification for split simple groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--format", choices=("text", "json", "csv"), default="text")
    fmt = _Parser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json", "csv"), default=argparse.SUPPRESS, help="output format")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("rootsys", parents=[fmt], help="root system summary")
    s.add_argument("type")
    s.add_argument("rank", type=int)

    for name, text in (("index", "orbit index N(W lambda)"), ("irrep", "dimension, multiplicities and Dynkin index")):
        s = sub.add_parser(name, parents=[fmt], help=text)
        s.add_argument("type")
        s.add_argument("rank", type=int)
        s.add_argument("weight", nargs="+", help="dominant weight in fundamental coordinates, e.g. [1,0,2] or 1 0 2")

    s = sub.add_parser("ng", parents=[fmt], help="N(G) by gcd search", description=GROUP_HELP)
    s.add_argument("group", help=GROUP_HELP)
    s.add_argument("--bound", type=int, default=DEFAULT_BOUND, help="max weight coordinate searched")

    s = sub.add_parser("eg", parents=[fmt], help="E(G), optionally E_q(G)", description=GROUP_HELP)
    s.add_argument("group", help=GROUP_HELP)
    s.add_argument("--quadratic", action="store_true", help="also report the quadratic-form constant")

    s = sub.add_parser("classify", parents=[fmt], help="trace-form verdicts in characteristic p", description=GROUP_HELP)
    s.add_argument("group", help=GROUP_HELP)
    s.add_argument("--char", type=int, required=True, help="prime, or 0")
    s.add_argument("--twist", choices=TWISTS, default="split", help="quasi-split form (looked up, not computed)")
    s.add_argument("--bound", type=int, default=DEFAULT_BOUND)

    s = sub.add_parser("table1", parents=[fmt], help="degenerate and zero primes for every row family")
    s.add_argument("--max-rank", type=int, default=8)
    s.add_argument("--bound", type=int, default=DEFAULT_BOUND)

    s = sub.add_parser("verify", parents=[fmt], help="matrix-model and baby Verma checks")
    s.add_argument("--suite", choices=("all", "trace", "appendix"), default="all")
    return p


def _primes(xs) -> list[int]:
    return sorted(int(x) for x in xs)


def _cmd_rootsys(args) -> tuple[dict, int]:
    rs = build_root_system(args.type.upper(), args.rank)
    return {
        "type": rs.name,
        "rank": rs.rank,
        "cartan_matrix": [list(row) for row in rs.cartan_matrix],
        "weyl_order": rs.weyl_order,
        "positive_roots": rs.num_positive,
        "coxeter_number": rs.coxeter_number,
        "dual_coxeter_number": dual_coxeter_number(rs),
        "fundamental_group": list(fundamental_group(rs)),
    }, EXIT_OK


def _weight_args(args):
    rs = build_root_system(args.type.upper(), args.rank)
    return rs, weight_from_string(" ".join(args.weight))


def _cmd_index(args) -> tuple[dict, int]:
    rs, w = _weight_args(args)
    return {"type": rs.name, "weight": list(w), "orbit_size": orbit_size(rs, w), "N": orbit_index_closed(rs, w)}, EXIT_OK


def _cmd_irrep(args) -> tuple[dict, int]:
    rs, w = _weight_args(args)
    d = irrep_data(rs, w)
    mults = [[list(mu), m] for mu, m in d.dominant_weight_multiplicities.items()]
    return {
        "type": rs.name,
        "weight": list(w),
        "dimension": d.dimension,
        "N": d.dynkin_index,
        "dominant_multiplicities": mults,
    }, EXIT_OK


def _cmd_ng(args) -> tuple[dict, int]:
    spec = parse_group_spec(args.group)
    rep = group_index(spec, args.bound)
    rec = {"group": spec.label, "N": rep.value, "bound": rep.bound, "stabilized": rep.stabilized, "previous": rep.previous}
    return rec, EXIT_OK if rep.stabilized else EXIT_INCONCLUSIVE


def _cmd_eg(args) -> tuple[dict, int]:
    spec = parse_group_spec(args.group)
    rec: dict[str, Any] = {"group": spec.label, "E": compute_E(spec)}
    if args.quadratic:
        rec["E_q"] = compute_Eq(spec)
    return rec, EXIT_OK


def _cmd_classify(args) -> tuple[dict, int]:
    spec = parse_group_spec(args.group)
    p = check_characteristic(args.char)
    rec: dict[str, Any] = {"group": spec.label, "char": p, "twist": args.twist}
    if args.twist != "split":
        v = twisted_classify(spec, args.twist, p)
        zero = v.zero_always
        rec.update(
            exists_nonzero=zero if isinstance(zero, str) else not zero,
            exists_nondegenerate=not v.degenerate_always,
            provenance=v.provenance,
        )
        return rec, EXIT_OK
    res = classify(spec, [p], args.bound)
    nonzero, nondeg = res.verdicts[p]
    rec.update(
        N=res.n_of_g,
        E=res.e_of_g,
        stabilized=res.stabilized,
        zero_primes=_primes(res.zero_primes),
        degenerate_primes=_primes(res.degenerate_primes),
        exists_nonzero=nonzero,
        exists_nondegenerate=nondeg,
        provenance=COMPUTED_PROVENANCE,
    )
    return rec, EXIT_OK


def _cmd_table1(args) -> tuple[dict, int]:
    rows = []
    for r in table1_render(args.max_rank, args.bound):
        rows.append({
            "family": r.family,
            "params": r.params,
            "group": r.label,
            "N": r.n_of_g,
            "E": r.e_of_g,
            "ratio_primes": list(r.ratio_primes),
            "degenerate_primes": list(r.degenerate_primes),
            "zero_primes": list(r.zero_primes),
            "flags": list(r.flags),
        })
    code = EXIT_INCONCLUSIVE if any(r["flags"] for r in rows) else EXIT_OK
    return {"max_rank": args.max_rank, "bound": args.bound, "rows": rows}, code


def _cmd_verify(args) -> tuple[dict, int]:
    checks = run_suite(args.suite)
    rows = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    failed = sum(not c.passed for c in checks)
    return {"suite": args.suite, "checks": rows, "failed": failed}, EXIT_FAILED if failed else EXIT_OK


COMMANDS = {
    "rootsys": _cmd_rootsys,
    "index": _cmd_index,
    "irrep": _cmd_irrep,
    "ng": _cmd_ng,
    "eg": _cmd_eg,
    "classify": _cmd_classify,
    "table1": _cmd_table1,
    "verify": _cmd_verify,
}


def _cell(v) -> str:
    if isinstance(v, (list, tuple)):
        return " ".join(_cell(x) for x in v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def _render_csv(command: str, rec: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if command == "table1":
        w.writerow(TABLE1_COLUMNS)
        for r in rec["rows"]:
            w.writerow([_cell(r[c]) for c in TABLE1_COLUMNS])
    elif command == "verify":
        w.writerow(("check", "passed", "detail"))
        for r in rec["checks"]:
            w.writerow([_cell(r["check"]), _cell(r["passed"]), r["detail"]])
    else:
        keys = [k for k in rec if k != "command"]
        w.writerow(keys)
        w.writerow([_cell(rec[k]) for k in keys])
    return buf.getvalue()


def _render_text(command: str, rec: dict) -> str:
    lines = []
    if command == "table1":
        header = ("group", "N", "E", "degenerate", "zero", "flags")
        body = [
            (r["group"], str(r["N"]), str(r["E"]), _cell(r["degenerate_primes"]) or "none",
             _cell(r["zero_primes"]) or "none", _cell(r["flags"]))
            for r in rec["rows"]
        ]
        widths = [max(len(x) for x in col) for col in zip(header, *body)]
        for row in (header, *body):
            lines.append("  ".join(x.ljust(wd) for x, wd in zip(row, widths)).rstrip())
    elif command == "verify":
        for r in rec["checks"]:
            lines.append(f"{'PASS' if r['passed'] else 'FAIL'}  {r['check']}")
        lines.append(f"{len(rec['checks']) - rec['failed']}/{len(rec['checks'])} checks passed")
    else:
        for k, v in rec.items():
            if k == "command":
                continue
            nested = isinstance(v, list) and v and isinstance(v[0], list)
            lines.append(f"{k}: {json.dumps(v) if nested else _cell(v)}")
    return "\n".join(lines) + "\n"


def render(command: str, rec: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rec, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        return _render_csv(command, rec)
    return _render_text(command, rec)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        rec, code = COMMANDS[args.command](args)
    except Inconclusive as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (InvalidInput, CapExceeded, OrbitTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    rec = {"command": " ".join(argv), **rec}
    sys.stdout.write(render(args.command, rec, args.format))
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
