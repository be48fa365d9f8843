"""Command-line interface.

Exit codes: 0 all checks pass, 1 verification mismatch, 2 usage or parse
error, 3 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
from pathlib import Path

import numba

from . import codefile
from .circulant import four_circulant_code, search_four_circulant
from .codes import LinearCode, classify_enumerator, min_weight, parity_class
from .covering import certify_cr12, covering_radius_exact
from .equivalence import are_equivalent, canonical_form
from .errors import CodeError, TooLarge
from .extend import table4_vector, tsai_extend
from .gf2 import BitVector
from .neighbors import doubly_even_neighbors, enumerate_neighbors, neighbor
from .tables import Registry, TableFormatError

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _load_code(spec: str, registry: Registry | None = None) -> LinearCode:
    """A CodeFile path, or a table id such as C64_24."""
    path = Path(spec)
    if path.exists():
        return codefile.read(path)
    registry = registry or Registry()
    if spec in registry.rows:
        return registry.code(spec)
    raise UsageError(f"{spec}: no such file or table id")


def _summary(c: LinearCode) -> dict:
    out = {"n": c.n, "k": c.k, "d": min_weight(c)}
    if c.is_self_dual():
        out["parity"] = parity_class(c).name.lower()
        try:
            cls = classify_enumerator(c)
            out["family"], out["beta"] = cls.family, cls.beta
        except CodeError:
            pass
    return out


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args) -> int:
    checkpoint = Path(args.state) if args.state else None
    result = search_four_circulant(args.order, args.d, checkpoint=checkpoint, min_weight_sum=args.min_weight_sum)
    rows = []
    for i, hit in enumerate(result.representatives, start=1):
        code = four_circulant_code(hit.spec)
        try:
            beta = classify_enumerator(code).beta
        except CodeError:
            beta = None
        rows.append([f"{i}", hit.spec.ra.to_string(), hit.spec.rb.to_string(), "" if beta is None else beta])
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["id", "r_A", "r_B", "beta"])
    w.writerows(rows)
    if args.out:
        Path(args.out).write_text(buf.getvalue())
    elif not args.json:
        sys.stdout.write(buf.getvalue())
    payload = {
        "order": args.order,
        "d": args.d,
        "pairs": result.pairs_scanned,
        "orbits": result.orbits,
        "classes": len(result.classes),
        "rows": [dict(zip(["id", "r_A", "r_B", "beta"], r)) for r in rows],
    }
    _emit(args, payload, f"classes={len(result.classes)}")
    return EXIT_OK


def _check_row(reg: Registry, row) -> tuple[bool, str]:
    c = reg.code(row.id)
    d = min_weight(c)
    problems = []
    if not c.is_self_dual():
        problems.append("not self-dual")
    if d != 12:
        problems.append(f"d={d}")
    parity = parity_class(c) if c.is_self_dual() else None
    if row.table == 3:
        if parity is not None and parity.name != "DOUBLY_EVEN":
            problems.append("not doubly even")
        parent = reg.code(row.parent)
        if c not in doubly_even_neighbors(parent):
            problems.append("not a doubly even neighbor of its parent")
        got = f"[{c.n},{c.k},{d}] {parity.name.lower() if parity else '-'}"
    else:
        if parity is not None and parity.name != "SINGLY_EVEN":
            problems.append("not singly even")
        try:
            cls = classify_enumerator(c)
            got = f"({cls.family}, {cls.beta})"
            if (cls.family, cls.beta) != (row.family, row.beta):
                problems.append(f"expected ({row.family}, {row.beta})")
        except CodeError as exc:
            got = f"[{c.n},{c.k},{d}] unclassified"
            problems.append(str(exc))
    return not problems, got + ("" if not problems else "  " + "; ".join(problems))


def cmd_verify(args) -> int:
    paths = {args.table: args.data} if args.data else None
    reg = Registry(paths)
    results = []
    for code_id in reg.ids(args.table):
        ok, detail = _check_row(reg, reg.row(code_id))
        results.append({"id": code_id, "pass": ok, "detail": detail})
        if not args.json:
            print(f"{'PASS' if ok else 'FAIL'} {code_id} {detail}", flush=True)
    passed = sum(r["pass"] for r in results)
    summary = f"table {args.table}: {passed}/{len(results)} PASS"
    if args.json:
        print(json.dumps({"table": args.table, "passed": passed, "total": len(results), "rows": results}, indent=2))
    else:
        print(summary)
    return EXIT_OK if passed == len(results) else EXIT_MISMATCH


def cmd_neighbor(args) -> int:
    c = _load_code(args.code)
    if args.support:
        x = BitVector.from_support(c.n, [int(t) for t in args.support.split(",")])
        d = neighbor(c, x, name=args.name)
        if args.out:
            codefile.write(d, args.out)
        _emit(args, _summary(d), _format_summary(d))
        return EXIT_OK
    if args.doubly_even:
        found = list(doubly_even_neighbors(c))
        for i, d in enumerate(found, start=1):
            if args.out:
                codefile.write(d, f"{args.out}.{i}")
        payload = [_summary(d) for d in found]
        _emit(args, {"neighbors": payload}, "\n".join(_format_summary(d) for d in found))
        return EXIT_OK
    found = []
    for desc, d in enumerate_neighbors(
        c, args.mode, parent=args.parent, w_max=args.w_max, budget=args.budget, min_d=args.min_d, seed=args.seed
    ):
        found.append({"descriptor": desc.to_line(), **_summary(d)})
        if not args.json:
            print(f"{desc.to_line()} {_format_summary(d)}", flush=True)
    if args.json:
        print(json.dumps({"neighbors": found}, indent=2))
    return EXIT_OK


def _format_summary(c: LinearCode) -> str:
    s = _summary(c)
    text = f"[{s['n']},{s['k']},{s['d']}]"
    if "parity" in s:
        text += f" {s['parity'].replace('_', ' ')}"
    if "family" in s:
        text += f" ({s['family']}, {s['beta']})"
    return text


def cmd_extend(args) -> int:
    c = _load_code(args.code)
    if args.x:
        x = BitVector.from_string(args.x)
    else:
        x = table4_vector(args.listed, c.n)
    e = tsai_extend(c, x, name=args.name)
    if args.out:
        codefile.write(e, args.out)
    _emit(args, _summary(e), _format_summary(e))
    return EXIT_OK


def cmd_equiv(args) -> int:
    reg = Registry()
    a, b = _load_code(args.a, reg), _load_code(args.b, reg)
    eq = are_equivalent(a, b)
    payload = {"equivalent": eq}
    if args.json or args.show_forms:
        payload["forms"] = [canonical_form(a).hex(), canonical_form(b).hex()] if (a.n, a.k) == (b.n, b.k) else None
    _emit(args, payload, "equivalent" if eq else "inequivalent")
    return EXIT_OK


def cmd_cr(args) -> int:
    c = _load_code(args.code)
    if args.certify_de_neighbors:
        report = certify_cr12(c, label=c.name or args.code)
        print(report.to_json() if args.json else report.to_text())
        ok = all(cert.conclusion == 12 for cert in report.certificates)
        return EXIT_OK if ok else EXIT_MISMATCH
    r = covering_radius_exact(c, memory_budget=args.memory_budget)
    _emit(args, {"covering_radius": r}, f"CR = {r}")
    return EXIT_OK


def cmd_export(args) -> int:
    reg = Registry()
    c = reg.code(args.id)
    if args.out:
        codefile.write(c, args.out)
    else:
        sys.stdout.write(codefile.dumps(c))
    return EXIT_OK


def cmd_info(args) -> int:
    c = _load_code(args.code)
    _emit(args, _summary(c), _format_summary(c))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sdcodes", description="Extremal self-dual codes of lengths 64 and 66.")
    p.add_argument("--threads", type=int, default=None, help="worker threads (default: $SDCODE_THREADS or all cores)")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("classify", help="classify four-circulant singly even self-dual codes")
    s.add_argument("--order", type=int, required=True, help="circulant order n (length 4n)")
    s.add_argument("--d", type=int, required=True, help="exact minimum weight")
    s.add_argument("--out", help="CSV output path (default: stdout)")
    s.add_argument("--state", help="resumable checkpoint file")
    s.add_argument("--min-weight-sum", type=int, default=None, help="lower bound on wt(r_A)+wt(r_B)")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("verify", help="rebuild and check a bundled table")
    s.add_argument("--table", type=int, choices=[1, 2, 3, 4], required=True)
    s.add_argument("--data", help="alternative CSV file for the table")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("neighbor", help="self-dual neighbors")
    s.add_argument("--code", required=True, help="CodeFile or table id")
    s.add_argument("--support", help="1-based support of x, comma separated")
    s.add_argument("--doubly-even", action="store_true", help="the two doubly even neighbors")
    s.add_argument("--mode", choices=["bounded", "random"], default="bounded")
    s.add_argument("--w-max", type=int, default=4)
    s.add_argument("--budget", type=int, default=None)
    s.add_argument("--min-d", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--parent", default="C")
    s.add_argument("--name")
    s.add_argument("--out")
    s.set_defaults(func=cmd_neighbor)

    s = sub.add_parser("extend", help="two-coordinate extension by an odd-weight vector")
    s.add_argument("--code", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--x", help="full bitstring, coordinate 1 first")
    g.add_argument("--listed", help="first 32 bits; the remaining coordinates are 1")
    s.add_argument("--name")
    s.add_argument("--out")
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("equiv", help="test permutation equivalence")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--show-forms", action="store_true")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("cr", help="covering radius")
    s.add_argument("code")
    s.add_argument("--certify-de-neighbors", action="store_true")
    s.add_argument("--memory-budget", type=int, default=1 << 28)
    s.set_defaults(func=cmd_cr)

    s = sub.add_parser("export", help="write a table code as a CodeFile")
    s.add_argument("id")
    s.add_argument("--out")
    s.set_defaults(func=cmd_export)

    s = sub.add_parser("info", help="parameters and enumerator class of a code")
    s.add_argument("code")
    s.set_defaults(func=cmd_info)
    return p


def _set_threads(requested: int | None) -> None:
    n = requested
    if n is None and os.environ.get("SDCODE_THREADS"):
        n = int(os.environ["SDCODE_THREADS"])
    if n is not None:
        numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        _set_threads(args.threads)
        return args.func(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, TableFormatError, codefile.CodeFileError, CodeError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
