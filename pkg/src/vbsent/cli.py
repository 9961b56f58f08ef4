"""Command-line front end.

Subcommands evaluate the closed forms (`pure`, `bipartition0`,
`disjoint`, `adjacent`, `pbc`, `mutual-info`), run the Monte Carlo
battery (`mc`), run every oracle suite (`verify`), or sweep one
geometry parameter (`sweep`).  Output is CSV or JSON; reruns with the
same arguments and seed are byte identical.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import platform
import sys

import numpy as np

from . import __version__
from . import closed_forms as cf
from . import effective_rho as er
from . import sphere_mc as mc
from . import verify as vf
from .linalg import EIG_CLAMP, HERMITICITY_TOL, spectrum_report

GROUP_DISPLAY_TOL = 1e-9
SIGMA_BOUND = 4.0

SPECTRA_HEADER = ("geometry", "index", "eigenvalue", "multiplicity")
MEASURES_HEADER = (
    "geometry",
    "negativity",
    "log_negativity",
    "entropy",
    "purity",
    "mutual_information",
)
MC_HEADER = ("task", "parameter", "estimate", "standard_error", "target", "sigmas")
VERIFY_HEADER = ("suite", "check", "passed", "worst", "bound")


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    # adding 0.0 normalizes -0.0 so reruns cannot differ in sign bits
    return f"{float(value) + 0.0:.12g}"


def _rounded(value):
    """12-significant-digit float for the JSON mirror of a CSV cell."""
    if value is None or isinstance(value, (bool, str, int)):
        return value
    return float(f"{float(value) + 0.0:.12g}")


def group_spectrum(values, tol: float = GROUP_DISPLAY_TOL):
    """Collapse a descending spectrum into (mean, multiplicity) groups.

    Grouping affects display only; adjacent values are merged while they
    stay within `tol` of the previous member.
    """
    ordered = sorted(float(v) for v in values)[::-1]
    groups: list[list[float]] = []
    for v in ordered:
        if groups and abs(groups[-1][-1] - v) <= tol:
            groups[-1].append(v)
        else:
            groups.append([v])
    return [(math.fsum(g) / len(g), len(g)) for g in groups]


def _spectra_rows(label: str, report) -> list[dict]:
    rows = []
    for index, (value, mult) in enumerate(group_spectrum(report.eigenvalues)):
        rows.append(
            {
                "geometry": label,
                "index": index,
                "eigenvalue": value,
                "multiplicity": mult,
            }
        )
    return rows


def _measures_row(label: str, *, negativity=None, log_negativity=None,
                  entropy=None, purity=None, mutual_information=None) -> dict:
    return {
        "geometry": label,
        "negativity": negativity,
        "log_negativity": log_negativity,
        "entropy": entropy,
        "purity": purity,
        "mutual_information": mutual_information,
    }


def _emit_tables(args, tables: list[tuple[tuple, list[dict]]]) -> None:
    """Print the run as CSV tables or as one JSON object mirroring them."""
    if args.format == "json":
        results = {}
        for header, rows in tables:
            key = {
                SPECTRA_HEADER: "spectra",
                MEASURES_HEADER: "measures",
                MC_HEADER: "estimates",
                VERIFY_HEADER: "checks",
            }[header]
            results.setdefault(key, []).extend(
                {k: _rounded(row[k]) for k in header} for row in rows
            )
        print(json.dumps(_json_envelope(args, results), indent=2, sort_keys=True))
        return
    blocks = []
    for header, rows in tables:
        if not rows:
            continue
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows([_fmt(row[k]) for k in header] for row in rows)
        blocks.append(buf.getvalue().rstrip("\n"))
    print("\n\n".join(blocks))


def _json_envelope(args, results) -> dict:
    skip = {"func", "format"}
    request = {
        k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None
    }
    return {
        "request": request,
        "results": results,
        "tolerances": {
            "hermiticity": HERMITICITY_TOL,
            "eigenvalue_clamp": EIG_CLAMP,
            "display_grouping": GROUP_DISPLAY_TOL,
            "verification": getattr(args, "tol", None) or 1e-10,
        },
        "versions": {
            "artifact": __version__,
            "numpy": np.__version__,
            "python": platform.python_version(),
        },
    }


# ------------------------------------------------------------ geometry runs


def _pure_tables(length: int):
    label = f"pure length={length}"
    block = cf.pure_block_spectrum(length)
    pt = cf.pure_pt_spectrum(length)
    spectra = _spectra_rows(f"{label} block", block)
    spectra += _spectra_rows(f"{label} transpose", pt)
    # the chain as a whole stays pure, so I(A:rest) = 2 S(A)
    measures = [
        _measures_row(
            label,
            negativity=pt.negativity,
            log_negativity=pt.log_negativity,
            entropy=block.entropy,
            purity=block.purity,
            mutual_information=2.0 * block.entropy,
        )
    ]
    return spectra, measures


def _bipartition0_tables():
    label = "bipartition0"
    block = spectrum_report([0.5, 0.5])
    pt = cf.bipartition_L0_pt_spectrum()
    spectra = _spectra_rows(f"{label} block", block)
    spectra += _spectra_rows(f"{label} transpose", pt)
    measures = [
        _measures_row(
            label,
            negativity=pt.negativity,
            log_negativity=pt.log_negativity,
            entropy=block.entropy,
            purity=block.purity,
            mutual_information=2.0 * block.entropy,
        )
    ]
    return spectra, measures


def _operator_tables(label: str, op):
    report = op.spectrum()
    pt = er.mode_partial_transpose(op).spectrum()
    m = er.measures(op)
    spectra = _spectra_rows(f"{label} block", report)
    spectra += _spectra_rows(f"{label} transpose", pt)
    measures = [
        _measures_row(
            label,
            negativity=pt.negativity,
            log_negativity=pt.log_negativity,
            entropy=report.entropy,
            purity=report.purity,
            mutual_information=m.mutual_information,
        )
    ]
    return spectra, measures


def cmd_pure(args) -> int:
    spectra, measures = _pure_tables(args.length)
    _emit_tables(args, [(SPECTRA_HEADER, spectra), (MEASURES_HEADER, measures)])
    return 0


def cmd_bipartition0(args) -> int:
    spectra, measures = _bipartition0_tables()
    _emit_tables(args, [(SPECTRA_HEADER, spectra), (MEASURES_HEADER, measures)])
    return 0


def cmd_disjoint(args) -> int:
    label = f"disjoint la={args.la} gap={args.gap} lb={args.lb}"
    op = er.rho_ab_open(args.la, args.gap, args.lb)
    spectra, measures = _operator_tables(label, op)
    _emit_tables(args, [(SPECTRA_HEADER, spectra), (MEASURES_HEADER, measures)])
    return 0


def cmd_adjacent(args) -> int:
    label = f"adjacent la={args.la} lb={args.lb}"
    op = er.rho_ab_adjacent(args.la, args.lb)
    spectra, measures = _operator_tables(label, op)
    _emit_tables(args, [(SPECTRA_HEADER, spectra), (MEASURES_HEADER, measures)])
    return 0


def cmd_pbc(args) -> int:
    label = f"pbc la={args.la} lb={args.lb} lc={args.lc} ld={args.ld}"
    op = er.rho_ab_pbc(args.la, args.lb, args.lc, args.ld)
    spectra, measures = _operator_tables(label, op)
    _emit_tables(args, [(SPECTRA_HEADER, spectra), (MEASURES_HEADER, measures)])
    return 0


def cmd_mutual_info(args) -> int:
    la, lb = args.la, args.lb
    if la != lb:
        raise ValueError("mutual-info compares equal blocks; pass --la equal to --lb")
    op = er.rho_ab_open(la, args.gap, lb)
    m = er.measures(op)
    pt = er.mode_partial_transpose(op).spectrum()
    asymptotic = cf.mutual_information(cf.decay_parameter(args.gap))
    finite_label = f"finite la={la} lb={lb} gap={args.gap}"
    rows = [
        _measures_row(
            finite_label,
            negativity=pt.negativity,
            log_negativity=pt.log_negativity,
            entropy=m.report.entropy,
            purity=m.report.purity,
            mutual_information=m.mutual_information,
        ),
        _measures_row(
            f"asymptotic gap={args.gap}", mutual_information=asymptotic
        ),
        _measures_row(
            "difference", mutual_information=m.mutual_information - asymptotic
        ),
    ]
    _emit_tables(args, [(MEASURES_HEADER, rows)])
    return 0


# --------------------------------------------------------------- mc battery


def _mc_norm_rows(args) -> list[dict]:
    rows = []
    if args.ring is not None:
        cases = [(args.ring, True)]
    else:
        cases = [(n, False) for n in range(1, 5)]
    for n, ring in cases:
        est = mc.estimate_vbs_norm(n, samples=args.samples, seed=args.seed, ring=ring)
        target = mc.vbs_norm_target(n, ring=ring)
        rows.append(
            {
                "task": "norm",
                "parameter": f"{'ring' if ring else 'open'} N={n}",
                "estimate": est.mean,
                "standard_error": est.standard_error,
                "target": target,
                "sigmas": est.sigmas_from(target),
            }
        )
    return rows


def _mc_overlap_rows(args) -> list[dict]:
    rows = []
    for mu in range(4):
        for nu in range(4):
            est = mc.estimate_block_overlap(
                mu, nu, args.length, samples=args.samples, seed=args.seed
            )
            target = mc.block_overlap_target(mu, nu, args.length)
            rows.append(
                {
                    "task": "overlap",
                    "parameter": f"mu={mu} nu={nu} L={args.length}",
                    "estimate": est.mean,
                    "standard_error": est.standard_error,
                    "target": target,
                    "sigmas": est.sigmas_from(target),
                }
            )
    return rows


def _mc_discriminate_rows(args) -> list[dict]:
    disc = mc.sign_discrimination(samples=args.samples, seed=args.seed)
    common = {"task": "discriminate", "estimate": disc.estimate.mean,
              "standard_error": disc.estimate.standard_error}
    return [
        {
            **common,
            "parameter": "plus reading mu=2 L=1",
            "target": disc.plus_target,
            "sigmas": disc.sigmas_from_plus,
        },
        {
            **common,
            "parameter": "minus reading mu=2 L=1",
            "target": disc.minus_target,
            "sigmas": disc.sigmas_from_minus,
        },
    ]


def cmd_mc(args) -> int:
    rows = []
    failed = False
    if args.task in ("norm", "all"):
        batch = _mc_norm_rows(args)
        failed |= any(r["sigmas"] > SIGMA_BOUND for r in batch)
        rows += batch
    if args.task in ("overlap", "all"):
        batch = _mc_overlap_rows(args)
        failed |= any(r["sigmas"] > SIGMA_BOUND for r in batch)
        rows += batch
    if args.task in ("discriminate", "all"):
        batch = _mc_discriminate_rows(args)
        plus, minus = batch
        # the check passes when the data sit on the plus reading only
        failed |= not (
            plus["sigmas"] <= SIGMA_BOUND and minus["sigmas"] > SIGMA_BOUND
        )
        rows += batch
    _emit_tables(args, [(MC_HEADER, rows)])
    if failed:
        for row in rows:
            bad = row["sigmas"] > SIGMA_BOUND and not row["parameter"].startswith(
                "minus"
            )
            if bad:
                print(
                    f"check failed: {row['task']} {row['parameter']}: "
                    f"estimate {_fmt(row['estimate'])} vs target "
                    f"{_fmt(row['target'])} ({_fmt(row['sigmas'])} sigmas)",
                    file=sys.stderr,
                )
        return 1
    return 0


# ------------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    results = vf.run_suites(
        max_sites=args.max_sites,
        tol=args.tol,
        samples=args.samples,
        seed=args.seed,
    )
    rows = [
        {
            "suite": r.suite,
            "check": r.name,
            "passed": r.passed,
            "worst": r.worst,
            "bound": r.bound,
        }
        for r in results
    ]
    _emit_tables(args, [(VERIFY_HEADER, rows)])
    bad = [r for r in results if not r.passed]
    for r in bad:
        print(
            f"check failed: {r.suite}: {r.name}: worst {_fmt(r.worst)} "
            f"exceeds bound {_fmt(r.bound)}",
            file=sys.stderr,
        )
    return 1 if bad else 0


# -------------------------------------------------------------------- sweep


_SWEEPABLE = {
    "pure": ("length",),
    "disjoint": ("la", "gap", "lb"),
    "adjacent": ("la", "lb"),
    "pbc": ("la", "lb", "lc", "ld"),
    "mutual-info": ("gap",),
}


def _parse_span(text: str):
    if ":" in text:
        lo, _, hi = text.partition(":")
        start, stop = int(lo), int(hi)
        if start > stop:
            raise ValueError(f"empty range {text!r}")
        return list(range(start, stop + 1))
    return int(text)


def cmd_sweep(args) -> int:
    names = _SWEEPABLE[args.command]
    values = {}
    span_name = None
    for name in names:
        raw = getattr(args, name)
        if raw is None:
            raise ValueError(f"sweep {args.command} needs --{name}")
        parsed = _parse_span(raw)
        if isinstance(parsed, list):
            if span_name is not None:
                raise ValueError("sweep takes a range on exactly one flag")
            span_name = name
            values[name] = parsed
        else:
            values[name] = parsed
    if span_name is None:
        raise ValueError("sweep takes a range (lo:hi) on exactly one flag")
    rows = []
    for point in values[span_name]:
        params = dict(values)
        params[span_name] = point
        rows.append(_sweep_point(args.command, params))
    _emit_tables(args, [(MEASURES_HEADER, rows)])
    return 0


def _sweep_point(command: str, params: dict) -> dict:
    if command == "pure":
        _, measures = _pure_tables(params["length"])
        return measures[0]
    if command == "disjoint":
        op = er.rho_ab_open(params["la"], params["gap"], params["lb"])
        label = "disjoint " + _param_label(params)
    elif command == "adjacent":
        op = er.rho_ab_adjacent(params["la"], params["lb"])
        label = "adjacent " + _param_label(params)
    elif command == "pbc":
        op = er.rho_ab_pbc(params["la"], params["lb"], params["lc"], params["ld"])
        label = "pbc " + _param_label(params)
    else:  # mutual-info sweeps the gap at fixed equal blocks
        op = er.rho_ab_open(6, params["gap"], 6)
        label = "mutual-info la=6 lb=6 " + _param_label(params)
    _, measures = _operator_tables(label, op)
    return measures[0]


def _param_label(params: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items())


# ------------------------------------------------------------------- parser


def _add_common(sub) -> None:
    sub.add_argument("--format", choices=("csv", "json"), default="csv")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vbsent",
        description="Closed-form entanglement data for the spin-1 valence-bond chain.",
    )
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("pure", help="single-block bipartition closed forms")
    p.add_argument("--length", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_pure)

    p = subs.add_parser("bipartition0", help="single-bond cut (L=0)")
    _add_common(p)
    p.set_defaults(func=cmd_bipartition0)

    p = subs.add_parser("disjoint", help="two separated blocks on the open chain")
    p.add_argument("--la", type=int, required=True)
    p.add_argument("--gap", type=int, required=True)
    p.add_argument("--lb", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_disjoint)

    p = subs.add_parser("adjacent", help="two touching blocks on the open chain")
    p.add_argument("--la", type=int, required=True)
    p.add_argument("--lb", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_adjacent)

    p = subs.add_parser("pbc", help="two blocks on a ring")
    p.add_argument("--la", type=int, required=True)
    p.add_argument("--lb", type=int, required=True)
    p.add_argument("--lc", type=int, required=True)
    p.add_argument("--ld", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_pbc)

    p = subs.add_parser(
        "mutual-info", help="finite-size vs asymptotic mutual information"
    )
    p.add_argument("--la", type=int, default=6)
    p.add_argument("--lb", type=int, default=6)
    p.add_argument("--gap", type=int, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_mutual_info)

    p = subs.add_parser("mc", help="Monte Carlo battery on the sphere sampler")
    p.add_argument(
        "--task", choices=("norm", "overlap", "discriminate", "all"), default="all"
    )
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--length", type=int, default=1)
    p.add_argument("--ring", type=int, default=None)
    _add_common(p)
    p.set_defaults(func=cmd_mc)

    p = subs.add_parser("verify", help="run every oracle-vs-formula suite")
    p.add_argument("--max-sites", type=int, default=8)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--samples", type=int, default=20_000)
    p.add_argument("--seed", type=int, default=7)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = subs.add_parser("sweep", help="one measures row per swept parameter value")
    p.add_argument("command", choices=sorted(_SWEEPABLE))
    p.add_argument("--la")
    p.add_argument("--gap")
    p.add_argument("--lb")
    p.add_argument("--lc")
    p.add_argument("--ld")
    p.add_argument("--length")
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
