"""Command-line front end.

Subcommands::

    bounds     closed-form bounds, one row per applicable theorem
    sieve      exact rational sieve bounds
    exact      exhaustive-enumeration probability
    simulate   Monte Carlo estimate
    sweep      bounds (optionally + simulation) over an n x p grid
    threshold  solve p(n) for a threshold constant c over an n-grid

Rows go to stdout or --output as CSV (RFC-4180 quoting) or JSON; every row
carries the full configuration needed to reproduce it.  Exit codes: 0 ok,
2 usage error, 3 domain error, 4 resource budget error; errors print one
machine-parseable line to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from .bounds import (
    applicable_bounds,
    bipartite_bounds,
    bipartite_turan_bounds,
    directed_adjust,
    gnp_bounds,
    kpartite_bounds,
    kpartite_turan_bounds,
    solve_threshold_p,
)
from .errors import DomainError, ResourceError
from .graphs import FamilyKind, GraphFamily, make_shape, turan_shape
from .montecarlo import estimate
from .oracle import exact_diameter_prob
from .sieve import incidence_stats, simple_sieve_lower, turan_sieve_upper

_PREFIX_COLUMNS = ["family", "n", "shape", "p", "seed", "trials"]

_COLUMNS = {
    "bounds": _PREFIX_COLUMNS
    + ["source", "asymptotic", "lower_raw", "upper_raw", "lower", "upper",
       "trivial_lower", "trivial_upper"],
    "sieve": _PREFIX_COLUMNS
    + ["b_count", "sum_deg", "sum_joint", "lower_exact", "upper_exact",
       "lower", "upper"],
    "exact": _PREFIX_COLUMNS + ["probability", "float"],
    "simulate": _PREFIX_COLUMNS
    + ["confidence", "workers", "successes", "p_hat", "wilson_lo", "wilson_hi",
       "elapsed"],
    "sweep": _PREFIX_COLUMNS
    + ["source", "lower_raw", "upper_raw", "lower", "upper", "trivial_lower",
       "trivial_upper", "successes", "p_hat", "wilson_lo", "wilson_hi"],
    "threshold": _PREFIX_COLUMNS
    + ["c", "c_observed", "asymptote_lower", "asymptote_upper", "source",
       "lower", "upper", "successes", "p_hat", "wilson_lo", "wilson_hi"],
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_p(text: str) -> Fraction:
    try:
        p = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse probability {text!r}") from exc
    if not 0 < p < 1:
        raise DomainError(f"edge probability must lie in (0,1), got {text}")
    return p


def _resolve_p(text: str, family, exact_required: bool):
    """One p specification: float, rational r/s, or threshold form c=<real>.

    The threshold form solves the family's threshold expression for p, so
    it cannot serve subcommands that need an exactly representable p.
    """
    if text.startswith("c="):
        if exact_required:
            raise DomainError(
                "this subcommand needs a rational p; the c=<real> form solves "
                "for a float"
            )
        try:
            c = float(text[2:])
        except ValueError as exc:
            raise UsageError(f"cannot parse threshold constant {text!r}") from exc
        return solve_threshold_p(family, c).p
    return _parse_p(text)


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse integer list {text!r}") from exc


def _parse_p_list(text: str) -> list[Fraction]:
    return [_parse_p(x) for x in text.split(",") if x.strip()]


def _build_family(args) -> GraphFamily:
    kind = FamilyKind(args.family)
    directed = kind in (
        FamilyKind.DIRECTED,
        FamilyKind.DIRECTED_KPARTITE,
        FamilyKind.DIRECTED_BIPARTITE,
    )
    if kind in (FamilyKind.SIMPLE, FamilyKind.DIRECTED):
        if args.n is None:
            raise UsageError(f"--family {args.family} requires -n")
        return GraphFamily.simple(args.n, directed=directed)
    if getattr(args, "turan", False):
        if args.n is None:
            raise UsageError("--turan requires -n")
        k = 2 if kind in (FamilyKind.BIPARTITE, FamilyKind.DIRECTED_BIPARTITE) else args.k
        if k is None:
            raise UsageError("--turan with a k-partite family requires -k")
        shape = turan_shape(args.n, k)
    else:
        if args.shape is None:
            raise UsageError(f"--family {args.family} requires --shape or --turan")
        shape = make_shape(_parse_int_list(args.shape))
    if kind in (FamilyKind.BIPARTITE, FamilyKind.DIRECTED_BIPARTITE):
        return GraphFamily.bipartite(shape, directed=directed)
    return GraphFamily.kpartite(shape, directed=directed)


def _prefix(family: GraphFamily, p, seed="", trials="") -> dict:
    return {
        "family": family.kind.value,
        "n": family.n,
        "shape": str(family.shape) if family.shape is not None else "",
        "p": str(p),
        "seed": seed,
        "trials": trials,
    }


def _emit(rows, subcommand: str, args, single_object: bool = False) -> None:
    columns = _COLUMNS[subcommand]
    full = [{c: row.get(c, "") for c in columns} for row in rows]
    if args.format == "json":
        payload = full[0] if single_object and len(full) == 1 else full
        text = json.dumps(payload, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=columns)
        writer.writeheader()
        writer.writerows(full)
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _theorem_bound(family: GraphFamily, p: float, turan_nk=None):
    if family.kind in (FamilyKind.SIMPLE, FamilyKind.DIRECTED):
        pair = gnp_bounds(family.n, p)
    elif family.kind in (FamilyKind.KPARTITE, FamilyKind.DIRECTED_KPARTITE):
        pair = (
            kpartite_turan_bounds(*turan_nk, p)
            if turan_nk is not None
            else kpartite_bounds(family.shape, p)
        )
    else:
        pair = (
            bipartite_turan_bounds(turan_nk[0], p)
            if turan_nk is not None
            else bipartite_bounds(family.shape, p)
        )
    if family.directed:
        pair = directed_adjust(pair)
    return pair


# ----------------------------------------------------------------------
# Subcommand handlers
# ----------------------------------------------------------------------


def _cmd_bounds(args) -> list[dict]:
    family = _build_family(args)
    p = _resolve_p(args.p, family, exact_required=False)
    turan_nk = (args.n, 2 if "bipartite" in args.family else args.k) if args.turan else None
    rows = []
    for pair in applicable_bounds(family, float(p), turan_nk=turan_nk):
        row = _prefix(family, p)
        row.update(
            source=pair.source,
            asymptotic=pair.asymptotic,
            lower_raw=pair.lower_raw,
            upper_raw=pair.upper_raw,
            lower=pair.lower,
            upper=pair.upper,
            trivial_lower=pair.trivial_lower,
            trivial_upper=pair.trivial_upper,
        )
        rows.append(row)
    return rows


def _cmd_sieve(args) -> list[dict]:
    family = _build_family(args)
    p = _resolve_p(args.p, family, exact_required=True)
    stats = incidence_stats(family, p)
    lower = max(Fraction(0), simple_sieve_lower(stats))
    upper = min(Fraction(1), turan_sieve_upper(stats))
    row = _prefix(family, p)
    row.update(
        b_count=stats.b_count,
        sum_deg=str(stats.sum_deg),
        sum_joint=str(stats.sum_joint),
        lower_exact=str(lower),
        upper_exact=str(upper),
        lower=float(lower),
        upper=float(upper),
    )
    return [row]


def _cmd_exact(args) -> list[dict]:
    family = _build_family(args)
    p = _resolve_p(args.p, family, exact_required=True)
    prob = exact_diameter_prob(family, p)
    row = _prefix(family, p)
    row.update(probability=str(prob), **{"float": float(prob)})
    return [row]


def _cmd_simulate(args) -> list[dict]:
    family = _build_family(args)
    p = _resolve_p(args.p, family, exact_required=False)
    result = estimate(
        family,
        float(p),
        trials=args.trials,
        seed=args.seed,
        confidence=args.confidence,
        workers=args.workers,
        verify_fraction=0.01 if args.verify else 0.0,
    )
    row = _prefix(family, p, seed=args.seed, trials=args.trials)
    row.update(
        confidence=args.confidence,
        workers=args.workers if args.workers is not None else "",
        successes=result.successes,
        p_hat=result.p_hat,
        wilson_lo=result.wilson_lo,
        wilson_hi=result.wilson_hi,
        elapsed=round(result.elapsed, 6),
    )
    return [row]


def _family_at_n(args, n: int) -> tuple[GraphFamily, tuple | None]:
    """Family for one grid point of sweep/threshold, plus its Turan (n,k)."""
    kind = FamilyKind(args.family)
    directed = kind in (
        FamilyKind.DIRECTED,
        FamilyKind.DIRECTED_KPARTITE,
        FamilyKind.DIRECTED_BIPARTITE,
    )
    if kind in (FamilyKind.SIMPLE, FamilyKind.DIRECTED):
        fam = GraphFamily.simple(n, directed=directed)
        return fam, None
    if args.turan:
        k = 2 if kind in (FamilyKind.BIPARTITE, FamilyKind.DIRECTED_BIPARTITE) else args.k
        if k is None:
            raise UsageError("--turan with a k-partite family requires -k")
        shape = turan_shape(n, k)
        turan_nk = (n, k)
    else:
        if args.shape is None:
            raise UsageError("partite families require --shape or --turan")
        shape = make_shape(_parse_int_list(args.shape))
        if shape.total() != n:
            raise DomainError(f"shape {shape} has {shape.total()} vertices, not n={n}")
        turan_nk = None
    if kind in (FamilyKind.BIPARTITE, FamilyKind.DIRECTED_BIPARTITE):
        return GraphFamily.bipartite(shape, directed=directed), turan_nk
    return GraphFamily.kpartite(shape, directed=directed), turan_nk


def _grid_ns(args) -> list[int]:
    if args.n_list:
        return _parse_int_list(args.n_list)
    if args.n is not None:
        return [args.n]
    if args.shape is not None:
        return [sum(_parse_int_list(args.shape))]
    raise UsageError("need --n-list, -n, or --shape to fix the grid")


def _cmd_sweep(args) -> list[dict]:
    ps = _parse_p_list(args.p_list)
    rows = []
    for n in _grid_ns(args):
        family, turan_nk = _family_at_n(args, n)
        for p in ps:
            pair = _theorem_bound(family, float(p), turan_nk)
            row = _prefix(family, p, seed=args.seed if args.trials else "",
                          trials=args.trials or "")
            row.update(
                source=pair.source,
                lower_raw=pair.lower_raw,
                upper_raw=pair.upper_raw,
                lower=pair.lower,
                upper=pair.upper,
                trivial_lower=pair.trivial_lower,
                trivial_upper=pair.trivial_upper,
            )
            if args.trials:
                result = estimate(
                    family, float(p), trials=args.trials, seed=args.seed,
                    workers=args.workers,
                )
                row.update(
                    successes=result.successes,
                    p_hat=result.p_hat,
                    wilson_lo=result.wilson_lo,
                    wilson_hi=result.wilson_hi,
                )
            rows.append(row)
    return rows


def _cmd_threshold(args) -> list[dict]:
    rows = []
    for n in _grid_ns(args):
        family, turan_nk = _family_at_n(args, n)
        if args.turan and turan_nk is not None:
            kind = "bipartite" if "bipartite" in args.family else "kpartite"
            c_target = args.c - math.log(2) if family.directed else args.c
            spec = solve_threshold_p(None, c_target, n=n, k=turan_nk[1], turan=kind)
            c_obs = spec.c_observed + (math.log(2) if family.directed else 0.0)
        else:
            spec = solve_threshold_p(family, args.c)
            c_obs = spec.c_observed
        p = spec.p
        pair = _theorem_bound(family, p, turan_nk)
        row = _prefix(family, repr(p), seed=args.seed if args.trials else "",
                      trials=args.trials or "")
        row.update(
            c=args.c,
            c_observed=c_obs,
            asymptote_lower=1 - math.exp(args.c) if args.c < 0 else "",
            asymptote_upper=math.exp(-args.c) if args.c > 0 else "",
            source=pair.source,
            lower=pair.lower,
            upper=pair.upper,
        )
        if args.trials:
            result = estimate(
                family, p, trials=args.trials, seed=args.seed, workers=args.workers
            )
            row.update(
                successes=result.successes,
                p_hat=result.p_hat,
                wilson_lo=result.wilson_lo,
                wilson_hi=result.wilson_hi,
            )
        rows.append(row)
    return rows


# ----------------------------------------------------------------------
# Parser assembly
# ----------------------------------------------------------------------


def _add_family_args(sub, partite_shape=True):
    sub.add_argument("--family", required=True,
                     choices=[k.value for k in FamilyKind])
    sub.add_argument("-n", type=int, default=None)
    if partite_shape:
        sub.add_argument("--shape", default=None,
                         help="comma-separated part sizes, e.g. 2,3,3")
        sub.add_argument("--turan", action="store_true",
                         help="balanced partition of n into k parts")
        sub.add_argument("-k", type=int, default=None)


def _add_output_args(sub):
    sub.add_argument("--format", choices=["csv", "json"], default="csv")
    sub.add_argument("--output", default=None, help="file path (default stdout)")


def build_parser() -> _Parser:
    parser = _Parser(prog="graphsieve", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    subs = parser.add_subparsers(dest="subcommand", required=True)

    for name in ("bounds", "sieve", "exact"):
        sub = subs.add_parser(name)
        _add_family_args(sub)
        sub.add_argument("-p", required=True,
                         help="edge probability: float, rational r/s, or "
                              "c=<real> (solved from the threshold expression; "
                              "bounds only)")
        _add_output_args(sub)

    sub = subs.add_parser("simulate")
    _add_family_args(sub)
    sub.add_argument("-p", required=True,
                     help="edge probability: float, rational r/s, or c=<real>")
    sub.add_argument("--trials", type=int, required=True)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument("--confidence", type=float, default=0.95)
    sub.add_argument("--verify", action="store_true",
                     help="re-check a 1%% subsample with the BFS diameter")
    _add_output_args(sub)

    sub = subs.add_parser("sweep")
    _add_family_args(sub)
    sub.add_argument("--n-list", default=None, help="comma-separated n grid")
    sub.add_argument("--p-list", required=True, help="comma-separated p grid")
    sub.add_argument("--trials", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument("--figure", default=None, help="render a figure to this path")
    _add_output_args(sub)

    sub = subs.add_parser("threshold")
    _add_family_args(sub)
    sub.add_argument("--c", type=float, required=True,
                     help="threshold constant; p(n) is solved from it")
    sub.add_argument("--n-list", default=None)
    sub.add_argument("--trials", type=int, default=None)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--workers", type=int, default=None)
    sub.add_argument("--figure", default=None)
    _add_output_args(sub)

    return parser


_HANDLERS = {
    "bounds": _cmd_bounds,
    "sieve": _cmd_sieve,
    "exact": _cmd_exact,
    "simulate": _cmd_simulate,
    "sweep": _cmd_sweep,
    "threshold": _cmd_threshold,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        rows = _HANDLERS[args.subcommand](args)
        _emit(rows, args.subcommand, args, single_object=args.subcommand == "exact")
        figure = getattr(args, "figure", None)
        if figure:
            from . import figures

            if args.subcommand == "sweep":
                figures.render_sweep_figure(rows, figure)
            else:
                figures.render_threshold_figure(rows, figure)
        return 0
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: domain: {exc}", file=sys.stderr)
        return 3
    except ResourceError as exc:
        print(f"error: resource: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
