"""Batch command line for the redundant base-3 toolkit: JSON for single results,
RFC-4180 CSV for tables.  Domain errors exit 1, usage errors exit 2."""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from fractions import Fraction

from tern4 import digits, fractal, measure, series

SCHEMA = 1


def _dec(v) -> float:
    """Decimal form rounded to 15 significant digits."""
    return float(f"{float(v):.15g}")


def _exact(v: Fraction) -> str:
    return str(Fraction(v))


def _emit_json(payload: dict) -> None:
    print(json.dumps(payload))


def _csv_writer():
    return csv.writer(sys.stdout)


def _probvector(args) -> measure.ProbVector:
    return measure.ProbVector.parse(args.p)


def cmd_repr(args) -> int:
    d = digits.parse(args.digitstring)
    card = digits.classify_cardinality(d)
    value = digits.evaluate(d)
    out = {
        "schema": SCHEMA,
        "input": str(d),
        "value": _exact(value),
        "value_decimal": _dec(value),
        "cardinality": card.kind.value,
    }
    if card.kind is digits.Cardinality.FINITE:
        out["count"] = card.count
    if card.kind is not digits.Cardinality.CONTINUUM:
        depth = args.depth if args.depth is not None else len(d.preperiod) + 6
        reps = digits.enumerate_representations(d, depth)
        out["depth"] = depth
        out["representations"] = [str(r) for r in reps]
    _emit_json(out)
    return 0


def cmd_classify(args) -> int:
    p = _probvector(args)
    c = measure.classify(p)
    out = {"schema": SCHEMA, "class": c.kind.value}
    if c.kind is measure.DistributionKind.ABSOLUTELY_CONTINUOUS:
        x = measure.decompose_uniform_plus_cantor(p)
        out["x"] = _exact(x)
        out["x_decimal"] = _dec(x)
        if c.uniform_on is not None:
            out["uniform_on"] = [_exact(c.uniform_on[0]), _exact(c.uniform_on[1])]
    if c.dimension is not None:
        out["dimension"] = _dec(c.dimension)
    _emit_json(out)
    return 0


def cmd_cdf(args) -> int:
    p = _probvector(args)
    if args.grid < 2:
        raise ValueError("grid needs at least 2 points")
    w = _csv_writer()
    w.writerow(["x", "lo", "hi"])
    for j in range(args.grid):
        x = Fraction(3, 2) * j / (args.grid - 1)
        lo, hi = measure.cdf(p, x, args.tol)
        w.writerow([_dec(x), _dec(lo), _dec(hi)])
    return 0


def cmd_charfn(args) -> int:
    p = _probvector(args)
    if args.step <= 0 or args.tmax < 0:
        raise ValueError("need step > 0 and tmax >= 0")
    w = _csv_writer()
    w.writerow(["t", "re", "im", "abs", "tail_bound"])
    t = 0.0
    while t <= args.tmax + 1e-12:
        r = measure.charfn(p, t, args.K)
        w.writerow([_dec(t), _dec(r.value.real), _dec(r.value.imag),
                    _dec(abs(r.value)), _dec(r.tail_bound)])
        t += args.step
    return 0


def cmd_lbound(args) -> int:
    p = _probvector(args)
    bound = measure.limsup_lower_bound(p, args.N, args.K)
    _emit_json({"schema": SCHEMA, "lower_bound": _dec(bound), "N": args.N, "K": args.K})
    return 0


def cmd_dimension(args) -> int:
    try:
        digit_set = tuple(int(c) for c in args.digits)
    except ValueError:
        raise ValueError(f"bad digit set {args.digits!r}") from None
    est = fractal.box_dimension(digit_set, args.nmax)
    w = _csv_writer()
    w.writerow(["n", "count", "log3_count"])
    for n, count in est.counts:
        w.writerow([n, count, _dec(math.log(count) / math.log(3))])
    target = fractal.dimension_target(digit_set)
    _emit_json({
        "schema": SCHEMA,
        "digit_set": "".join(str(c) for c in sorted(set(digit_set))),
        "slope": _dec(est.slope),
        "r2": _dec(est.r2),
        "target": _dec(target),
        "abs_error": _dec(abs(est.slope - target)),
    })
    return 0


def cmd_levelset(args) -> int:
    d = digits.parse(args.digitstring)
    depth = args.depth if args.depth is not None else len(d.preperiod) + 6
    ls = fractal.level_set(d, depth)
    out = {
        "schema": SCHEMA,
        "input": str(d),
        "cardinality": ls.cardinality.kind.value,
    }
    if ls.cardinality.kind is digits.Cardinality.FINITE:
        out["count"] = ls.cardinality.count
    if ls.members is not None:
        out["depth"] = depth
        out["members"] = [{"exact": _exact(v), "decimal": _dec(v)} for v in ls.members]
    if ls.constraints is not None:
        out["constraints"] = [
            {"position": pos, "pair": "%d%d" % pair, "alternative": "%d%d" % alt}
            for pos, pair, alt in ls.constraints
        ]
    _emit_json(out)
    return 0


def cmd_decompose(args) -> int:
    p = _probvector(args)
    out = {"schema": SCHEMA, "uniform_plus_cantor": None, "cantor_pair": None}
    try:
        x = measure.decompose_uniform_plus_cantor(p)
        out["uniform_plus_cantor"] = {"x": _exact(x), "x_decimal": _dec(x)}
    except ValueError:
        pass
    try:
        u, v = measure.decompose_cantor_pair(p)
        out["cantor_pair"] = {"u": _exact(u), "v": _exact(v),
                              "u_decimal": _dec(u), "v_decimal": _dec(v)}
    except ValueError:
        pass
    _emit_json(out)
    return 0


def cmd_series(args) -> int:
    if args.check is not None:
        _emit_json({
            "schema": SCHEMA,
            "kakeya_holds": series.kakeya_check(args.check),
            "n_checked": args.check,
        })
        return 0
    x = Fraction(args.greedy)
    bits = series.greedy_approximate(x, args.nmax)
    if len(bits) % 3:
        bits = bits + (0,) * (3 - len(bits) % 3)  # padding leaves the subsum unchanged
    word = series.eta_subsum_digits(bits)
    w = _csv_writer()
    w.writerow(["bits", "digits", "value"])
    w.writerow(["".join(map(str, bits)), "".join(map(str, word)), _exact(series.subsum(bits))])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tern4",
        description="base-3 numeral system with digits {0,1,2,3}: expansions, "
                    "digit-law distributions, fractal dimensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_probs(sp):
        sp.add_argument("p", nargs=4, metavar="P",
                        help="digit probabilities, each 'a/b' or a decimal")

    sp = sub.add_parser("repr", help="value, expansion cardinality and expansions of a digit string")
    sp.add_argument("digitstring", help="e.g. '1010(12)'")
    sp.add_argument("--depth", type=int, default=None, help="max preperiod length to enumerate")
    sp.set_defaults(func=cmd_repr)

    sp = sub.add_parser("classify", help="distribution type of the digit law")
    add_probs(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("cdf", help="distribution function enclosures on a grid (CSV)")
    add_probs(sp)
    sp.add_argument("--grid", type=int, default=51, help="number of grid points on [0, 3/2]")
    sp.add_argument("--tol", type=float, default=1e-4, help="target enclosure width")
    sp.set_defaults(func=cmd_cdf)

    sp = sub.add_parser("charfn", help="characteristic function along a t grid (CSV)")
    add_probs(sp)
    sp.add_argument("--tmax", type=float, default=50.0)
    sp.add_argument("--step", type=float, default=0.5)
    sp.add_argument("--K", type=int, default=40, help="number of product factors")
    sp.set_defaults(func=cmd_charfn)

    sp = sub.add_parser("lbound", help="certified lower bound for limsup |charfn|")
    add_probs(sp)
    sp.add_argument("--N", type=int, default=3, help="witnesses 2*pi*n, n = 1..N")
    sp.add_argument("--K", type=int, default=40)
    sp.set_defaults(func=cmd_lbound)

    sp = sub.add_parser("dimension", help="box-counting dimension of a digit-restricted set")
    sp.add_argument("--digits", required=True, help="digit set, e.g. 013")
    sp.add_argument("--nmax", type=int, required=True)
    sp.set_defaults(func=cmd_dimension)

    sp = sub.add_parser("levelset", help="level set of the base-4 reinterpretation map")
    sp.add_argument("digitstring")
    sp.add_argument("--depth", type=int, default=None)
    sp.set_defaults(func=cmd_levelset)

    sp = sub.add_parser("decompose", help="convolution decompositions of the digit law")
    add_probs(sp)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("series", help="governing-series checks and greedy subsums")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--check", type=int, metavar="N",
                       help="verify term <= remainder for n = 1..N (JSON)")
    group.add_argument("--greedy", metavar="X",
                       help="greedy subsum approximation of X in [0, 3/2] (CSV)")
    sp.add_argument("--nmax", type=int, default=30, help="selector length for --greedy")
    sp.set_defaults(func=cmd_series)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
