"""Command-line surface.

Subcommands: auction run, shapley exact, shapley rsyp, hardness
gen|verify|growth, experiment compare, gen random.  Exit codes: 0 on
success, 1 for validation problems, 2 for infeasible sizes.

The default payment rule is strict.  Note that the bundled example
instance reproduces its documented payments (8 and 8) only under
--rule first_conflict; see the README for the two rules.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import isqrt
from pathlib import Path
from typing import Optional

from .auction import run_auction
from .errors import (
    InfeasibleSizeError,
    InstanceFormatError,
    ModeMismatchError,
    NormalizationUndefinedError,
    ValidationError,
    Violation,
)
from .experiment import compare_rows_document, run_experiment_compare, write_compare_csv
from .generator import (
    DEFAULT_BID_HI,
    DEFAULT_BID_LO,
    DEFAULT_BUNDLE_CAP,
    ExperimentConfig,
    generate_random_instance,
)
from .hardness import (
    HardInstance,
    build_hard_instance,
    marginal_growth_table,
    verify_hard_instance,
    write_growth_csv,
)
from .harsanyi import dividends_from_game, shapley_dividends, write_dividend_csv
from .instance import (
    AuctionInstance,
    PaymentRule,
    SingleMindedBid,
    ValuationMode,
    parse_instance,
    render_instance,
)
from .rsyp import RsypConfig, rsyp
from .shapley_exact import (
    ShapleyResult,
    shapley_additive_closed_form,
    shapley_permutation,
    shapley_subset,
)


def _read_instance(path: str) -> AuctionInstance:
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return parse_instance(text)


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _rule(args) -> Optional[PaymentRule]:
    return PaymentRule(args.rule) if args.rule else None


def _outcome_csv(doc: dict) -> str:
    lines = ["searcher,bundle,payment,payment_float"]
    for w in doc["winners"]:
        bundle = " ".join(str(t) for t in w["bundle"])
        lines.append(f"{w['searcher']},{bundle},{w['payment']},{_float_of(w['payment'])}")
    lines.append(f"revenue,,{doc['revenue']},{_float_of(doc['revenue'])}")
    return "\n".join(lines) + "\n"


def _float_of(exact: str) -> float:
    from .money import Money

    try:
        return float(Money(exact))
    except (ValueError, TypeError, ZeroDivisionError):
        return float("nan")


def _shapley_csv(res: ShapleyResult) -> str:
    lines = ["t_index,phi,gamma,phi_float,gamma_float"]
    for t, p in enumerate(res.phi):
        if res.gamma is None:
            lines.append(f"{t},{p},,{float(p)!r},")
        else:
            g = res.gamma[t]
            lines.append(f"{t},{p},{g},{float(p)!r},{float(g)!r}")
    return "\n".join(lines) + "\n"


def cmd_auction_run(args) -> int:
    inst = _read_instance(args.input)
    outcome = run_auction(inst, _rule(args))
    doc = outcome.to_document()
    if args.format == "json":
        _emit(json.dumps(doc, indent=2), args.out)
    else:
        _emit(_outcome_csv(doc), args.out)
    return 0


_METHODS = {
    "subset": shapley_subset,
    "permutation": shapley_permutation,
    "dividends": shapley_dividends,
}


def cmd_shapley_exact(args) -> int:
    inst = _read_instance(args.input)
    if args.method == "additive":
        res = shapley_additive_closed_form(inst)
    else:
        res = _METHODS[args.method](inst, _rule(args))
    if args.dividends_out:
        if args.method != "dividends":
            print("--dividends-out requires --method dividends", file=sys.stderr)
            return 1
        with open(args.dividends_out, "w", newline="") as fp:
            write_dividend_csv(dividends_from_game(inst, _rule(args)), fp)
    _emit_result(res, args)
    return 0


def _emit_result(res: ShapleyResult, args) -> None:
    if args.format == "json":
        _emit(json.dumps(res.to_document(), indent=2), args.out)
    else:
        _emit(_shapley_csv(res), args.out)


def cmd_shapley_rsyp(args) -> int:
    inst = _read_instance(args.input)
    rule = _rule(args) or inst.payment_rule
    cfg = RsypConfig(k=args.k, seed=args.seed, rule=rule, exhaustive=args.exhaustive)
    _emit_result(rsyp(inst, cfg), args)
    return 0


def cmd_hardness_gen(args) -> int:
    shifts = _parse_int_list(args.shifts) if args.shifts else None
    h = build_hard_instance(args.n, shifts)
    _emit(render_instance(h.instance), args.out)
    return 0


VIOLATION_SHAPE = Violation("not a generated hard instance (searcher count != 2*sqrt(n))")
VIOLATION_BIDS = Violation("hard-instance bids must be integers")


def _reconstruct_hard(inst: AuctionInstance) -> HardInstance:
    """Split a generated document back into the two families by position."""
    side = isqrt(inst.n)
    if inst.mode is not ValuationMode.SINGLE_MINDED or inst.m != 2 * side:
        raise ValidationError([VIOLATION_SHAPE])
    searchers = inst.searchers
    def as_int(b: SingleMindedBid) -> int:
        f = b.bid.as_fraction()
        if f.denominator != 1:
            raise ValidationError([VIOLATION_BIDS])
        return f.numerator

    return HardInstance(
        n=inst.n,
        side=side,
        row_bundles=tuple(s.bundle for s in searchers[:side]),
        diag_bundles=tuple(s.bundle for s in searchers[side:]),
        row_bids=tuple(as_int(s) for s in searchers[:side]),
        diag_bids=tuple(as_int(s) for s in searchers[side:]),
        instance=inst,
    )


def cmd_hardness_verify(args) -> int:
    if (args.n is None) == (args.input is None):
        print("hardness verify needs exactly one of --n or --input", file=sys.stderr)
        return 1
    if args.n is not None:
        h = build_hard_instance(args.n)
    else:
        h = _reconstruct_hard(_read_instance(args.input))
    report = verify_hard_instance(h)
    if report:
        for v in report:
            print(str(v), file=sys.stderr)
        return 1
    print(f"ok: n={h.n} side={h.side} searchers={h.instance.m}")
    return 0


def cmd_hardness_growth(args) -> int:
    sizes = _parse_int_list(args.sizes)
    rule = _rule(args) or PaymentRule.FIRST_CONFLICT
    rows = marginal_growth_table(sizes, mode=args.mode, rule=rule)
    if args.out:
        with open(args.out, "w", newline="") as fp:
            write_growth_csv(rows, fp)
        if not args.no_plot:
            from .plots import render_growth_figure

            render_growth_figure(rows, _figure_path(args.out))
    else:
        import io

        buf = io.StringIO()
        write_growth_csv(rows, buf)
        sys.stdout.write(buf.getvalue())
    return 0


def _figure_path(out: str) -> str:
    p = Path(out)
    return str(p.with_suffix(".png")) if p.suffix != ".png" else str(p) + ".png"


def cmd_experiment_compare(args) -> int:
    rule = PaymentRule(args.rule) if args.rule else PaymentRule.STRICT
    fixed = _read_instance(args.instance) if args.instance else None
    n = fixed.n if fixed is not None else args.n
    m = fixed.m if fixed is not None else args.m
    if n is None or m is None:
        print("experiment compare needs --n and --m (or --instance)", file=sys.stderr)
        return 1
    cfg = ExperimentConfig(
        n=n,
        m=m,
        instance_count=args.count,
        k=args.k,
        seed=args.seed,
        rule=rule,
    )
    rows, summary = run_experiment_compare(cfg, instance=fixed)
    if args.format == "json":
        _emit(json.dumps(compare_rows_document(rows, summary), indent=2), args.out)
        return 0
    if args.out:
        with open(args.out, "w", newline="") as fp:
            write_compare_csv(rows, summary, fp)
        if not args.no_plot:
            from .plots import render_compare_figure

            render_compare_figure(rows, _figure_path(args.out))
    else:
        import io

        buf = io.StringIO()
        write_compare_csv(rows, summary, buf)
        sys.stdout.write(buf.getvalue())
    return 0


def cmd_gen_random(args) -> int:
    cfg = ExperimentConfig(
        n=args.n,
        m=args.m,
        instance_count=max(args.count, 1),
        seed=args.seed,
        mode=ValuationMode(args.mode),
        bid_lo=args.bid_lo,
        bid_hi=args.bid_hi,
        bundle_cap=args.bundle_cap,
    )
    if args.count > 1:
        if not args.out:
            print("gen random --count > 1 needs --out as a filename stem", file=sys.stderr)
            return 1
        base = Path(args.out)
        for i in range(args.count):
            inst = generate_random_instance(cfg, i)
            target = base.with_name(f"{base.stem}-{i}{base.suffix or '.json'}")
            target.write_text(render_instance(inst))
        print(f"wrote {args.count} instances next to {base}")
        return 0
    inst = generate_random_instance(cfg, args.index)
    _emit(render_instance(inst), args.out)
    return 0


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.replace(",", " ").split()]
    except ValueError:
        raise ValueError(f"expected a comma-separated list of integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mevmatch",
        description="Combinatorial order-flow auctions with Shapley revenue redistribution.",
        epilog=(
            "The default payment rule is strict; use --rule first_conflict to "
            "reproduce the documented example payments."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_io(p, formats=("json", "csv")):
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--format", choices=formats, default=formats[0])

    def add_rule(p):
        p.add_argument(
            "--rule",
            choices=[r.value for r in PaymentRule],
            help="payment rule override (default: the instance's rule)",
        )

    auction = sub.add_parser("auction", help="run an auction").add_subparsers(
        dest="verb", required=True
    )
    run_p = auction.add_parser("run", help="allocate and price one instance")
    run_p.add_argument("--input", required=True, help="instance file, - for stdin")
    add_rule(run_p)
    add_io(run_p)
    run_p.set_defaults(func=cmd_auction_run)

    shapley = sub.add_parser("shapley", help="revenue attribution").add_subparsers(
        dest="verb", required=True
    )
    exact_p = shapley.add_parser("exact", help="exact attribution")
    exact_p.add_argument("--input", required=True)
    exact_p.add_argument(
        "--method",
        choices=["subset", "permutation", "dividends", "additive"],
        default="subset",
    )
    add_rule(exact_p)
    add_io(exact_p)
    exact_p.add_argument("--dividends-out", help="also dump the dividend CSV here")
    exact_p.set_defaults(func=cmd_shapley_exact)

    rsyp_p = shapley.add_parser("rsyp", help="sampled attribution estimate")
    rsyp_p.add_argument("--input", required=True)
    rsyp_p.add_argument("--k", type=int, required=True, help="number of sampled orderings")
    rsyp_p.add_argument("--seed", type=int, default=0)
    rsyp_p.add_argument(
        "--exhaustive",
        action="store_true",
        help="enumerate all orderings instead of sampling (exact)",
    )
    add_rule(rsyp_p)
    add_io(rsyp_p)
    rsyp_p.set_defaults(func=cmd_shapley_rsyp)

    hardness = sub.add_parser(
        "hardness", help="adversarial grid instances"
    ).add_subparsers(dest="verb", required=True)
    gen_p = hardness.add_parser("gen", help="emit a grid instance document")
    gen_p.add_argument("--n", type=int, required=True, help="perfect-square size")
    gen_p.add_argument("--shifts", help="diagonal layout, e.g. 0,2,1")
    gen_p.add_argument("--out")
    gen_p.set_defaults(func=cmd_hardness_gen)

    verify_p = hardness.add_parser("verify", help="check the structural invariants")
    verify_p.add_argument("--n", type=int)
    verify_p.add_argument("--input")
    verify_p.set_defaults(func=cmd_hardness_verify)

    growth_p = hardness.add_parser("growth", help="distinct-marginal census")
    growth_p.add_argument("--sizes", required=True, help="e.g. 4,9,16")
    growth_p.add_argument("--mode", choices=["full", "targeted"], default="targeted")
    add_rule(growth_p)
    growth_p.add_argument("--out", help="CSV file; a PNG lands beside it")
    growth_p.add_argument("--no-plot", action="store_true")
    growth_p.set_defaults(func=cmd_hardness_growth)

    experiment = sub.add_parser(
        "experiment", help="exact vs sampled comparisons"
    ).add_subparsers(dest="verb", required=True)
    comp_p = experiment.add_parser("compare", help="error of the sampled shares")
    comp_p.add_argument("--n", type=int)
    comp_p.add_argument("--m", type=int)
    comp_p.add_argument("--count", type=int, default=1, help="instances to draw")
    comp_p.add_argument("--k", type=int, help="samples per instance (default 25*n^2)")
    comp_p.add_argument("--seed", type=int, default=0)
    comp_p.add_argument("--instance", help="fixed instance file instead of random draws")
    add_rule(comp_p)
    comp_p.add_argument("--out", help="CSV file; a PNG lands beside it")
    comp_p.add_argument("--format", choices=["csv", "json"], default="csv")
    comp_p.add_argument("--no-plot", action="store_true")
    comp_p.set_defaults(func=cmd_experiment_compare)

    gen = sub.add_parser("gen", help="random instances").add_subparsers(
        dest="verb", required=True
    )
    rand_p = gen.add_parser("random", help="draw seeded random instances")
    rand_p.add_argument("--n", type=int, required=True)
    rand_p.add_argument("--m", type=int, required=True)
    rand_p.add_argument(
        "--mode",
        choices=[m.value for m in ValuationMode],
        default=ValuationMode.SINGLE_MINDED.value,
    )
    rand_p.add_argument("--seed", type=int, default=0)
    rand_p.add_argument("--index", type=int, default=0, help="substream index")
    rand_p.add_argument("--count", type=int, default=1)
    rand_p.add_argument("--bid-lo", type=int, default=DEFAULT_BID_LO)
    rand_p.add_argument("--bid-hi", type=int, default=DEFAULT_BID_HI)
    rand_p.add_argument("--bundle-cap", type=int, default=DEFAULT_BUNDLE_CAP)
    rand_p.add_argument("--out")
    rand_p.set_defaults(func=cmd_gen_random)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InfeasibleSizeError as exc:
        print(f"infeasible size: {exc}", file=sys.stderr)
        return 2
    except (InstanceFormatError, ValidationError, ModeMismatchError,
            NormalizationUndefinedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
