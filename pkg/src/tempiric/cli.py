"""Command-line surface: catalog inspection, enumeration, verification,
matrix export, and lattice diagrams.

Exit codes: 0 all requested checks pass, 1 a mathematical check failed,
2 usage or input error.  All output is deterministic given the arguments
and seed; the seed is recorded in report headers.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

from . import cktheory, figures
from .catalog import BUILTIN_NAMES, CatalogError, builtin, load, serialize
from .cktheory import DEFAULT_SEED, UnresolvedColumnsError, WindowError
from .tempered import InternalInconsistencyError, format_label, tempiric_window
from .weights import enumerate_ktypes, vogan_norm, weyl_dim
from .branching import restrict_decompose

VERIFY_PAIRS = 200
VERIFY_ADMISSIBILITY = 100
VERIFY_NORM_CAP = 60


class UsageError(ValueError):
    pass


def _fraction_arg(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tempiric",
        description="Exact tempered-dual multiplicity structure for rank-one groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, bound=False, grid=False):
        group = p.add_mutually_exclusive_group()
        group.add_argument("--group", help="built-in group name")
        group.add_argument("--group-file", help="path to a group definition JSON file")
        if bound:
            p.add_argument(
                "--bound", type=_fraction_arg, required=True,
                help="Vogan norm bound of the window (rational)",
            )
        if grid:
            p.add_argument(
                "--grid-bound", type=int, required=True,
                help="maximum label coordinate of the diagram grid",
            )
        p.add_argument("--format", default=None, help="output format")
        p.add_argument("--out", default=None, help="write output to this file")
        p.add_argument(
            "--seed", type=int, default=DEFAULT_SEED,
            help="seed for randomized checks (default %(default)s)",
        )

    common(sub.add_parser("catalog", help="list built-ins or show one group"))
    common(sub.add_parser("ktypes", help="enumerate the K-type window"), bound=True)
    common(sub.add_parser("branch", help="branching table over the window"), bound=True)
    common(
        sub.add_parser("tempiric-table", help="tempered representatives of the window"),
        bound=True,
    )
    common(
        sub.add_parser("ck-matrix", help="multiplicity matrix and inverse"),
        bound=True,
    )
    common(sub.add_parser("verify", help="run all machine checks"), bound=True)
    common(sub.add_parser("figure", help="marker diagram of the label grid"), grid=True)
    return parser


def _resolve_datum(args):
    if getattr(args, "bound", None) is not None and args.bound < 0:
        raise UsageError("bound must be nonnegative")
    if getattr(args, "grid_bound", None) is not None and args.grid_bound < 0:
        raise UsageError("grid bound must be nonnegative")
    if args.group_file:
        return load(args.group_file)
    if args.group:
        return builtin(args.group)
    raise UsageError("one of --group or --group-file is required")


def _pick_format(args, allowed, default):
    fmt = args.format or default
    if fmt not in allowed:
        raise UsageError(
            f"format {fmt!r} not supported here; choose from {', '.join(allowed)}"
        )
    return fmt


def _csv_text(header, rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def cmd_catalog(args) -> tuple[int, str]:
    fmt = _pick_format(args, ("txt", "json"), "txt")
    if not (args.group or args.group_file):
        if fmt == "json":
            return 0, _json_text({"groups": list(BUILTIN_NAMES)})
        return 0, "\n".join(BUILTIN_NAMES) + "\n"
    datum = _resolve_datum(args)
    if fmt == "json":
        return 0, _json_text(serialize(datum))
    lines = [
        f"name: {datum.name}",
        f"k_atoms: {', '.join(datum.k.atoms)}",
        f"m_atoms: {', '.join(datum.m.atoms)}",
        f"branching_rule: {datum.branching_rule}",
        f"two_rho_c: {format_label(datum.two_rho_c)}",
        f"weyl_on_mhat: {datum.weyl_on_mhat}",
        f"equal_rank: {datum.equal_rank}",
        f"a_dim: {datum.a_dim}",
        f"discrete_series: {'yes' if datum.ds else 'no'}",
    ]
    return 0, "\n".join(lines) + "\n"


def cmd_ktypes(args) -> tuple[int, str]:
    fmt = _pick_format(args, ("csv", "json"), "csv")
    datum = _resolve_datum(args)
    window = enumerate_ktypes(datum, args.bound)
    records = [
        (format_label(tau), str(vogan_norm(datum, tau)), weyl_dim(datum.k, tau))
        for tau in window
    ]
    if fmt == "json":
        payload = {
            "group": datum.name,
            "bound": str(args.bound),
            "ktypes": [
                {"label": list(tau), "norm": str(vogan_norm(datum, tau)),
                 "dim": weyl_dim(datum.k, tau)}
                for tau in window
            ],
        }
        return 0, _json_text(payload)
    return 0, _csv_text(("label", "norm", "dim"), records)


def cmd_branch(args) -> tuple[int, str]:
    fmt = _pick_format(args, ("csv", "json"), "csv")
    datum = _resolve_datum(args)
    window = enumerate_ktypes(datum, args.bound)
    rows = []
    for tau in window:
        decomposition = restrict_decompose(datum, tau)
        for sigma in sorted(decomposition.support()):
            rows.append((tau, sigma, decomposition[sigma]))
    if fmt == "json":
        payload = {
            "group": datum.name,
            "bound": str(args.bound),
            "branchings": [
                {"ktype": list(tau), "mtype": list(sigma), "multiplicity": mult}
                for tau, sigma, mult in rows
            ],
        }
        return 0, _json_text(payload)
    return 0, _csv_text(
        ("ktype", "mtype", "multiplicity"),
        [(format_label(t), format_label(s), m) for t, s, m in rows],
    )


def _rep_record(datum, rep) -> dict:
    if rep.kind == "ds":
        params = format_label(rep.hc_param)
        kind = "discrete-series"
    else:
        params = rep.ps_class.describe()
        kind = "principal-series"
    return {
        "kind": kind,
        "parameters": params,
        "minimal_ktype": list(rep.min_ktype),
        "split": rep.split,
        "vogan_norm": str(vogan_norm(datum, rep.min_ktype)),
    }


def cmd_tempiric_table(args) -> tuple[int, str]:
    fmt = _pick_format(args, ("csv", "json"), "csv")
    datum = _resolve_datum(args)
    _, reps = tempiric_window(datum, args.bound)
    records = [_rep_record(datum, rep) for rep in reps]
    if fmt == "json":
        return 0, _json_text(
            {"group": datum.name, "bound": str(args.bound), "records": records}
        )
    rows = [
        (
            r["kind"],
            r["parameters"],
            format_label(r["minimal_ktype"]),
            str(r["split"]).lower(),
            r["vogan_norm"],
        )
        for r in records
    ]
    return 0, _csv_text(
        ("kind", "parameters", "minimal_ktype", "split", "vogan_norm"), rows
    )


def _column_descriptor(rep) -> dict:
    if rep.kind == "ds":
        return {
            "kind": "ds",
            "hc_param": list(rep.hc_param),
            "min_ktype": list(rep.min_ktype),
        }
    return {
        "kind": "ps",
        "orbit": [list(s) for s in rep.ps_class.orbit],
        "w_sigma_order": rep.ps_class.w_sigma_order,
        "min_ktype": list(rep.min_ktype),
        "split": rep.split,
    }


def cmd_ck_matrix(args) -> tuple[int, str]:
    fmt = _pick_format(args, ("json", "csv"), "json")
    datum = _resolve_datum(args)
    matrix = cktheory.mult_matrix(datum, args.bound)
    inverse = None
    refusal = None
    try:
        inverse = cktheory.invert_window(matrix)
    except UnresolvedColumnsError as exc:
        refusal = {"reason": "aggregate-only columns", "columns": list(exc.columns)}
    entries = sorted((i, j, v) for (i, j), v in matrix.entries.items())
    if fmt == "json":
        payload = {
            "group": datum.name,
            "bound": str(args.bound),
            "rows": [list(tau) for tau in matrix.rows],
            "cols": [_column_descriptor(rep) for rep in matrix.cols],
            "entries": [[i, j, v] for i, j, v in entries],
            "resolution": list(matrix.resolution),
        }
        if inverse is not None:
            payload["inverse"] = inverse
        else:
            payload["refusal"] = refusal
        return 0, _json_text(payload)
    rows = [
        ("entry", format_label(matrix.rows[i]), matrix.cols[j].describe(), v)
        for i, j, v in entries
    ]
    for j, flag in enumerate(matrix.resolution):
        rows.append(("resolution", "", matrix.cols[j].describe(), flag))
    if inverse is not None:
        for i, row in enumerate(inverse):
            for j, v in enumerate(row):
                if v:
                    rows.append(
                        ("inverse", matrix.cols[i].describe(),
                         format_label(matrix.rows[j]), v)
                    )
    else:
        for column in refusal["columns"]:
            rows.append(("refusal", "", column, "aggregate-only"))
    return 0, _csv_text(("section", "row", "col", "value"), rows)


def _identity_sweep(datum, bound, seed):
    cap = min(Fraction(bound), Fraction(VERIFY_NORM_CAP))
    pairs = cktheory.random_ktype_sums(datum, 2 * VERIFY_PAIRS, cap, seed)
    for v1, v2 in zip(pairs[0::2], pairs[1::2]):
        report = cktheory.dimension_identity_check(datum, v1, v2)
        total = sum(d for _, d in cktheory.boundary_block_dims(datum, v1, v2))
        if report.passed and total != report.data["lhs"]:
            report = cktheory.VerificationReport(
                "dimension_identity",
                False,
                counterexample={
                    "v1": sorted(v1.items()),
                    "v2": sorted(v2.items()),
                    "lhs": report.data["lhs"],
                    "boundary_total": total,
                    "reason": "boundary block total differs from the Hom dimension",
                },
            )
        if not report.passed:
            return report
    return cktheory.VerificationReport(
        "dimension_identity", True, data={"pairs": VERIFY_PAIRS}
    )


def _admissibility_sweep(datum, bound, seed):
    cap = min(Fraction(bound), Fraction(VERIFY_NORM_CAP))
    for v in cktheory.random_ktype_sums(datum, VERIFY_ADMISSIBILITY, cap, seed + 1):
        report = cktheory.admissibility_check(datum, v)
        if not report.passed:
            return report
    return cktheory.VerificationReport(
        "admissibility", True, data={"samples": VERIFY_ADMISSIBILITY}
    )


def _verify_reports(datum, bound, seed):
    # Checks run in order and stop at the first failure; inconsistencies
    # raised mid-check fail the check that tripped them.
    checks = [
        ("blattner_consistency", lambda: cktheory.blattner_consistency_check(datum, bound)),
        ("vogan_bijection", lambda: cktheory.vogan_bijection_check(datum, bound)),
        ("triangularity", lambda: cktheory.triangularity_check(datum, bound)),
        ("dimension_identity", lambda: _identity_sweep(datum, bound, seed)),
        ("admissibility", lambda: _admissibility_sweep(datum, bound, seed)),
    ]
    reports = []
    for name, thunk in checks:
        try:
            report = thunk()
        except InternalInconsistencyError as exc:
            report = cktheory.VerificationReport(
                name, False, counterexample={"error": str(exc)}
            )
        reports.append(report)
        if not report.passed:
            break
    return reports


def cmd_verify(args) -> tuple[int, str]:
    fmt = _pick_format(args, ("txt", "json"), "txt")
    datum = _resolve_datum(args)
    reports = _verify_reports(datum, args.bound, args.seed)
    ok = all(r.passed for r in reports)
    if fmt == "json":
        payload = {
            "group": datum.name,
            "bound": str(args.bound),
            "seed": args.seed,
            "checks": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "counterexample": r.counterexample,
                }
                for r in reports
            ],
            "all_passed": ok,
        }
        return (0 if ok else 1), _json_text(payload)
    lines = [f"# verify group={datum.name} bound={args.bound} seed={args.seed}"]
    for r in reports:
        if r.passed:
            lines.append(f"{r.name}: pass")
        else:
            lines.append(f"{r.name}: FAIL {json.dumps(r.counterexample)}")
    lines.append("# all checks passed" if ok else "# FAILURES detected")
    return (0 if ok else 1), "\n".join(lines) + "\n"


def cmd_figure(args) -> tuple[int, str]:
    fmt = _pick_format(args, ("txt", "dot", "svg"), "txt")
    datum = _resolve_datum(args)
    try:
        spec = figures.build_diagram(datum, args.grid_bound)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    renderer = {
        "txt": figures.render_text,
        "dot": figures.render_dot,
        "svg": figures.render_svg,
    }[fmt]
    return 0, renderer(spec)


_COMMANDS = {
    "catalog": cmd_catalog,
    "ktypes": cmd_ktypes,
    "branch": cmd_branch,
    "tempiric-table": cmd_tempiric_table,
    "ck-matrix": cmd_ck_matrix,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, text = _COMMANDS[args.command](args)
    except (UsageError, CatalogError, WindowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalInconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return 1
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
