"""Command-line front end.

Exit codes: 0 success / polychromatic / pass, 1 refuted or failed (a witness
is printed), 2 usage or input error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
import time
from math import comb

from . import colorings as col
from .bounds import asymptotic_ratio, lattice_bound_check, p_bas
from .certificate import crux_certificate
from .search import search_best_linear
from .verifier import (DEFAULT_BUDGET, BudgetExceeded, verify_cube_oracle, verify_reduced,
                       verify_sampled)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _factor_str(moduli) -> str:
    return "*".join(str(m) for m in moduli)


def table_rows(d_min: int = 4, d_max: int = 12) -> list[dict]:
    if not 4 <= d_min <= d_max:
        raise UsageError(f"need 4 <= d_min <= d_max, got {d_min}, {d_max}")
    rows = []
    for d in range(d_min, d_max + 1):
        base, base_mod = p_bas(d, 2)
        c = col.main_coloring(d)
        p = col.main_params(d)
        printed = col.PRINTED_CONSTRUCTION.get(d)
        rows.append({
            "d": d,
            "p_bas": base,
            "p_bas_factors": _factor_str(base_mod),
            "construction": c.order,
            "construction_factors": _factor_str(c.group.moduli),
            "params": f"t={p.t} n={p.modulus_n} {p.variant}",
            "binom": comb(d + 1, 3),
            "printed": None if printed is None else f"{printed[0] * printed[1]}={_factor_str(printed)}",
            "discrepancy": c.note is not None,
        })
    return rows


def render_table(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(rows, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue().rstrip("\n")
    lines = [f"{'d':>4}  {'p_bas^2(d)':>14}  {'construction':>14}  {'C(d+1,3)':>8}"]
    notes = []
    for r in rows:
        mark = " *" if r["discrepancy"] else ""
        lines.append(f"{r['d']:>4}  {str(r['p_bas']) + '=' + r['p_bas_factors']:>14}  "
                     f"{str(r['construction']) + '=' + r['construction_factors']:>14}  "
                     f"{r['binom']:>8}{mark}")
        if r["discrepancy"]:
            notes.append(f"* d={r['d']}: printed table gives {r['printed']}, "
                         f"the case formula gives {r['construction']}={r['construction_factors']} "
                         f"({r['params']})")
    return "\n".join(lines + notes)


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}.")
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}{i}.")
    else:
        yield prefix[:-1], json.dumps(obj) if isinstance(obj, list) else obj


def render_report(report: dict, fmt: str, summary: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["key", "value"])
        w.writerows(_flatten(report))
        return buf.getvalue().rstrip("\n")
    return summary


def _read_coloring(path: str) -> col.LinearColoring:
    if path == "-":
        return col.decode(sys.stdin.read())
    return col.load(path)


def _budget(args):
    return None if args.force else args.budget


# -- subcommands ----------------------------------------------------------------

def cmd_table(args) -> int:
    print(render_table(table_rows(args.d_min, args.d_max), args.format))
    return EXIT_OK


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "main":
        c = col.main_coloring(_need(args, "d"))
    elif kind == "basic":
        moduli = [int(x) for x in args.moduli.split(",")] if args.moduli else None
        c = col.basic_coloring(_need(args, "d"), _need(args, "ell"), moduli)
    elif kind == "crux":
        c = col.crux_coloring(col.CruxParams(_need(args, "t"), _need(args, "n"), args.variant))
    elif kind == "trivial":
        c = col.trivial_coloring(_need(args, "ell"))
    else:
        if len(args.input or []) != 2:
            raise UsageError("--kind product needs two --input files")
        c = col.product_coloring(*(_read_coloring(p) for p in args.input))
    if c.note:
        print(f"note: {c.note}", file=sys.stderr)
    text = col.encode(c)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"--{name} is required for --kind {args.kind}")
    return value


def cmd_verify(args) -> int:
    c = _read_coloring(args.input)
    d = args.d
    t0 = time.perf_counter()
    if args.mode == "reduced":
        v = verify_reduced(c, d, budget=_budget(args), workers=args.workers)
    elif args.mode == "oracle":
        n = args.ambient_n if args.ambient_n is not None else d + 2
        v = verify_cube_oracle(c, d, n, budget=None if args.force else args.budget)
    else:
        v = verify_sampled(c, d, args.samples, args.seed)
    report = v.to_dict()
    report["coloring"] = col.to_dict(c)
    report["seconds"] = round(time.perf_counter() - t0, 3)
    if v.polychromatic:
        word = "no counterexample found" if v.mode == "sampled" else "polychromatic"
        summary = f"{c.label or 'coloring'}: {word} at d={d} ({v.mode}, {v.states_enumerated} states)"
    else:
        cls, missing = v.witness
        summary = (f"{c.label or 'coloring'}: NOT {d}-polychromatic ({v.mode})\n"
                   f"witness profile {list(cls.residues)} misses color {list(missing)}")
        if v.embedding:
            summary += f"\nembedding {v.embedding}"
    print(render_report(report, args.format, summary))
    return EXIT_OK if v.polychromatic else EXIT_FAIL


def cmd_certificate(args) -> int:
    rep = crux_certificate(col.CruxParams(args.t, args.n, args.variant))
    lines = [f"crux t={args.t} n={args.n} {args.variant}: m={rep.params.m} d={rep.params.d} "
             f"colors={rep.params.m * args.n} -> {'PASS' if rep.passed else 'FAIL'}"]
    for o in rep.obligations:
        lines.append(f"  [{'ok' if o.passed else 'FAIL'}] {o.name}: {o.universe}"
                     + (f" ({o.detail})" if o.detail else "")
                     + ("" if o.passed else f" counterexample {o.counterexample}"))
    print(render_report(rep.to_dict(), args.format, "\n".join(lines)))
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_bound(args) -> int:
    if args.asymptotic:
        r = asymptotic_ratio(args.d)
        summary = (f"d={r.d}: c/d <= {r.c_over_d_max:.6f}, s/d <= {r.s_over_d:.6f}, "
                   f"N/C(d+1,3) <= {r.N_ratio_bound:.6f} (26/27 = {26 / 27:.6f})")
        print(render_report(r.to_dict(), args.format, summary))
        return EXIT_OK
    if not args.input:
        raise UsageError("bound needs --input (or --asymptotic)")
    c = _read_coloring(args.input)
    cert = lattice_bound_check(c, args.d)
    summary = (f"N={cert.N} shortest {list(cert.shortest_vec)} 2Q={cert.c_squared_times_2} "
               f"s={cert.s} frustum bound={cert.frustum_bound} "
               f"sphere_ok={cert.sphere_ok} frustum_ok={cert.frustum_ok}")
    print(render_report(cert.to_dict(), args.format, summary))
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_search(args) -> int:
    res = search_best_linear(args.d, args.ell, args.max_order, budget=_budget(args),
                             prune=not args.no_prune, workers=args.workers)
    summary = (f"d={args.d} ell={args.ell} orders<= {args.max_order}: best linear count "
               f"{res.best_count} ({len(res.best)} winners); candidates {res.candidates} = "
               f"{res.pruned_by_bound} pruned + {res.verified} verified + {res.refuted} refuted"
               + ("" if res.complete else " [INCOMPLETE: budget exceeded]"))
    print(render_report(res.to_dict(), args.format, summary))
    return EXIT_OK if res.complete else EXIT_BUDGET


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="polycube", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, workers=False, budget=False):
        sp.add_argument("--format", choices=("tty", "csv", "json"), default="tty")
        if workers:
            sp.add_argument("--workers", "--threads", type=int, default=os.cpu_count() or 1)
        if budget:
            sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                            help="elementary mask-operation limit")
            sp.add_argument("--force", action="store_true", help="ignore the budget")

    sp = sub.add_parser("table", help="values for a range of d (ell = 2)")
    sp.add_argument("d_min", type=int, nargs="?", default=4)
    sp.add_argument("d_max", type=int, nargs="?", default=12)
    common(sp)
    sp.set_defaults(func=cmd_table)

    sp = sub.add_parser("construct", help="write a coloring file")
    sp.add_argument("--kind", choices=("main", "basic", "crux", "product", "trivial"),
                    required=True)
    sp.add_argument("--d", type=int)
    sp.add_argument("--ell", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--variant", choices=("A", "B"), default="A")
    sp.add_argument("--moduli", help="comma-separated forced moduli for --kind basic")
    sp.add_argument("--input", action="append", help="coloring files for --kind product")
    sp.add_argument("--output", "-o", default="-")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="check d-polychromaticity of a coloring file")
    sp.add_argument("--input", "-i", default="-")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--mode", choices=("reduced", "oracle", "sampled"), default="reduced")
    sp.add_argument("--ambient-n", type=int)
    sp.add_argument("--samples", type=int, default=10**5)
    sp.add_argument("--seed", type=int, default=0)
    common(sp, workers=True, budget=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("certificate", help="finite obligations of the crux construction")
    sp.add_argument("--t", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--variant", choices=("A", "B"), default="A")
    common(sp)
    sp.set_defaults(func=cmd_certificate)

    sp = sub.add_parser("bound", help="lattice upper-bound certificate (ell = 2)")
    sp.add_argument("--input", "-i")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--asymptotic", action="store_true",
                    help="report the finite-d asymptotic ratio instead")
    common(sp)
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("search", help="best linear coloring over small groups")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--ell", type=int, default=2)
    sp.add_argument("--max-order", type=int, required=True)
    sp.add_argument("--no-prune", action="store_true")
    common(sp, workers=True, budget=True)
    sp.set_defaults(func=cmd_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc} (use --force or --budget)", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
