"""Command-line front end.

Exit codes: 0 on success, 2 for usage errors (bad arguments, unknown oracle
or demo, unparsable expression), 3 when a computation fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from . import gallery
from .arithmetic import add_sup
from .expr import ParseError, evaluate, parse
from .magnitudes import (
    HarnessError,
    NonArchimedeanError,
    SYSTEMS,
    check_axioms,
    check_measure_map,
    refute_rational_diagonal,
)
from .real_core import (
    DEFAULT_CAP,
    GUARD_DIGITS,
    DecimalExpansion,
    Digits,
    ceil_scaled,
    digits_from_enclosure,
    floor_scaled,
    separate,
)
from .sup_engine import (
    OracleInconsistency,
    cut_from_name,
    measure,
    oracle_from_name,
    supremum,
)
from .tower import PeriodicDecimal

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE = 0, 2, 3

COMPUTE_ERRORS = (
    ArithmeticError,  # ZeroDivisionError, SignUnknownError, PrecisionShortfall
    ValueError,
    OracleInconsistency,
    HarnessError,
    NonArchimedeanError,
    RecursionError,
)


class UsageError(Exception):
    pass


@dataclass
class Output:
    """What a command produced, in both formats."""

    text: str
    value: object = None
    digits: Optional[str] = None
    indeterminate_at: Optional[int] = None
    precision_used: Optional[int] = None

    def json(self) -> str:
        return json.dumps(
            {
                "value": self.text if self.value is None else self.value,
                "digits": self.digits,
                "indeterminate_at": self.indeterminate_at,
                "precision_used": self.precision_used,
            },
            ensure_ascii=False,
        )


# -- commands ------------------------------------------------------------------------


def _parse_expr(text: str):
    try:
        return parse(text)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from exc


def cmd_digits(args) -> Output:
    node = _parse_expr(args.expr)
    res = digits_from_enclosure(evaluate(node, args.cap), args.n, args.cap)
    text = res.render(args.notation)
    if isinstance(res, Digits):
        return Output(text, digits=res.plain, precision_used=res.precision_used)
    return Output(text, indeterminate_at=res.position, precision_used=res.precision_used)


def cmd_compare(args) -> Output:
    x = evaluate(_parse_expr(args.left), args.cap)
    y = evaluate(_parse_expr(args.right), args.cap)
    verdict, p = separate(x, y, cap=args.m, start=min(GUARD_DIGITS, args.m))
    return Output(str(verdict), precision_used=p)


def cmd_sup(args) -> Output:
    try:
        oracle = oracle_from_name(args.oracle)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    res = supremum(oracle, args.cap)
    text = res.digits(args.n) + "…"
    lines = [text]
    start = res.nines_tail(max(args.n, min(args.cap, args.n + GUARD_DIGITS)))
    if start is not None and start <= args.n + 1:
        lines.append(
            f"# nines tail from digit {start}: same real as {res.normalized(args.n)}"
        )
    return Output("\n".join(lines), value=text, digits=res.digits(args.n), precision_used=args.n)


def _cut(name: str):
    if name == "e":
        return gallery.e_cut()
    try:
        return cut_from_name(name)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc


def cmd_measure(args) -> Output:
    a = measure(_cut(args.oracle), args.n)
    text = a.text(args.n)
    return Output(text, digits=text, precision_used=args.n)


def cmd_axioms(args) -> Output:
    make, mu = SYSTEMS[args.system]
    system = make(size=args.size, seed=args.seed)
    axioms = check_axioms(system)
    props = check_measure_map(system, mu)
    body = [r.line("AXIOM") for r in axioms.results]
    body += [r.line("PROPERTY") for r in props.results]
    ok = axioms.passed and props.passed
    verdict = "no counterexample found" if ok else "counterexample found"
    body.append(f"# {system.name}: seeded sample of {len(system.carrier)}, {verdict} (finite audit)")
    return Output("\n".join(body))


# -- gallery ------------------------------------------------------------------------------


def _sequence(name: str) -> gallery.RationalSequence:
    if name == "sqrt2":
        return gallery.SQRT2_SEQ
    if name == "harmonic":
        return gallery.HARMONIC
    if name == "e":
        return gallery.E_PARTIAL
    if name.startswith("constant:"):
        return gallery.constant_seq(Fraction(name.split(":", 1)[1]))
    raise UsageError(f"unknown sequence {name!r} (sqrt2, harmonic, e, constant:<q>)")


def _interval_text(lo: Fraction, hi: Fraction, places: int) -> str:
    def fixed(scaled: int) -> str:
        ip, frac = divmod(scaled, 10**places)
        return f"{ip}." + str(frac).rjust(places, "0")

    return f"[{fixed(floor_scaled(lo, places))}, {fixed(ceil_scaled(hi, places))}]"


def _demo_sqrt2_seq(args) -> str:
    n = args.n if args.n is not None else 4
    p = gallery.sqrt2_numerator(n)
    ip, frac = divmod(p, 10**n)
    decimal = f"{ip}." + str(frac).rjust(n, "0") if n else str(ip)
    return f"{p}/10^{n} = {decimal}"


def _demo_harmonic_gap(args) -> str:
    return str(gallery.harmonic_gap(args.n if args.n is not None else 1))


def _demo_cauchy(args) -> str:
    s = _sequence(args.seq or "sqrt2")
    eps = Fraction(args.eps or "1/1000")
    return gallery.cauchy_check(s, eps, args.n if args.n is not None else 50).render()


def _demo_consecutive_gap(args) -> str:
    s = _sequence(args.seq or "harmonic")
    eps = Fraction(args.eps or "1/100")
    return gallery.consecutive_gap_check(s, eps, args.n if args.n is not None else 1000).render()


def _demo_e_enclosure(args) -> str:
    n = args.n if args.n is not None else 10
    lo, hi = gallery.e_enclosure(n)
    places = max(10, len(str((hi - lo).denominator)) + 2)
    return f"e_enclosure({n}) = {_interval_text(lo, hi, places)}, width 1/{(1 / (hi - lo))}"


def _demo_gamma_enclosure(args) -> str:
    n = args.n if args.n is not None else 50
    lo, hi = gallery.gamma_enclosure(n)
    return f"gamma_enclosure({n}) = {_interval_text(lo, hi, 12)}, width < {float(hi - lo):.6g}"


def _demo_monotone_limit(args) -> str:
    name = args.seq or "sqrt2"
    s = _sequence(name)
    bound = {"sqrt2": 2, "e": 3}.get(name, args.bound)
    if bound is None:
        raise UsageError("--bound is required for this sequence")
    return gallery.monotone_bounded_limit(s, Fraction(bound), horizon=args.n or 30).render()


def _demo_abel(args) -> str:
    N = args.n if args.n is not None else 100_000
    pi = gallery.pi_float()
    lines = []
    for label, x in (("pi - 0.01", pi - 0.01), ("pi + 0.01", pi + 0.01)):
        lines.append(f"x = {label}: S_{N} = {gallery.abel_demo(x, N):.6f}")
    lines.append(f"(pi - 0.01)/2 = {(pi - 0.01) / 2:.6f}")
    lines.append("demo, not exact: floating-point partial sums")
    return "\n".join(lines)


def _demo_dedekind(args) -> str:
    n = args.n if args.n is not None else 30
    a = digits_from_enclosure(evaluate(parse("sqrt(2) * sqrt(3)"), args.cap), n, args.cap)
    b = digits_from_enclosure(evaluate(parse("root(2, 6)"), args.cap), n, args.cap)
    same = "agree" if str(a) == str(b) else "DIFFER"
    return f"sqrt(2) * sqrt(3) = {a}\nroot(2, 6)        = {b}\n{n} digits {same}"


def _demo_incommensurable(args) -> str:
    q_max = args.n if args.n is not None else 100
    results = refute_rational_diagonal(q_max)
    survivors = [v for v, k in results if k == 0]
    squares = sum(1 for q in range(1, q_max + 1) for p in range(1, 2 * q + 1) if p * p == 2 * q * q)
    lines = [
        f"candidates p/q in (0, 2] with q <= {q_max}: {len(results)}",
        f"refuted as measures of the diagonal: {len(results) - len(survivors)}",
        f"p/q with p^2 = 2 q^2: {squares}",
        "finite audit, not a proof",
    ]
    return "\n".join(lines)


def _demo_nines_sum(args) -> str:
    n = args.n if args.n is not None else 10
    a = DecimalExpansion.from_periodic(PeriodicDecimal(1, 0, (), (3,)))
    b = DecimalExpansion.from_periodic(PeriodicDecimal(1, 0, (), (6,)))
    res = add_sup(a, b, args.cap)
    line = f"0.(3) + 0.(6) = {res.digits(n)}…"
    start = res.nines_tail(n + 1)
    if start is not None:
        line += f"\n# nines tail from digit {start}: same real as {res.normalized(n)}"
    return line


DEMOS: dict[str, Callable] = {
    "sqrt2-seq": _demo_sqrt2_seq,
    "harmonic-gap": _demo_harmonic_gap,
    "cauchy": _demo_cauchy,
    "consecutive-gap": _demo_consecutive_gap,
    "e-enclosure": _demo_e_enclosure,
    "gamma-enclosure": _demo_gamma_enclosure,
    "monotone-limit": _demo_monotone_limit,
    "abel": _demo_abel,
    "dedekind": _demo_dedekind,
    "incommensurable": _demo_incommensurable,
    "nines-sum": _demo_nines_sum,
}


def cmd_gallery(args) -> Output:
    demo = DEMOS.get(args.name)
    if demo is None:
        raise UsageError(f"unknown demo {args.name!r}; choose from {', '.join(DEMOS)}")
    return Output(demo(args))


# -- argument parsing -------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json"), default="plain")
    common.add_argument("--notation", choices=("minus", "star"), default="minus",
                        help="negatives as -x (default) or x*")
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                        help=f"precision cap in digits (env DECREAL_CAP, default {DEFAULT_CAP})")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    parser = argparse.ArgumentParser(prog="decreal", description="Exact reals as decimal expansions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("digits", parents=[common], help="first N decimals of an expression")
    p.add_argument("expr")
    p.add_argument("-n", type=_positive, default=10)
    p.set_defaults(run=cmd_digits)

    p = sub.add_parser("compare", parents=[common], help="order two expressions")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-m", type=_positive, default=50, help="precision to escalate to")
    p.set_defaults(run=cmd_compare)

    p = sub.add_parser("sup", parents=[common], help="least upper bound of a named set")
    p.add_argument("--oracle", required=True, help="sqrt:<r>, root:<k>:<r>, set:x^k<r, below:<q>, singleton:<q>")
    p.add_argument("-n", type=_positive, default=10)
    p.set_defaults(run=cmd_sup)

    p = sub.add_parser("measure", parents=[common], help="measure a named object against the unit")
    p.add_argument("--oracle", required=True, help="as for sup, plus e")
    p.add_argument("-n", type=_positive, default=10)
    p.set_defaults(run=cmd_measure)

    p = sub.add_parser("axioms", parents=[common], help="audit a comparative system")
    p.add_argument("--system", choices=sorted(SYSTEMS), required=True)
    p.add_argument("--size", type=_positive, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_axioms)

    p = sub.add_parser("gallery", parents=[common], help="run a named demo")
    p.add_argument("name", help=", ".join(DEMOS))
    p.add_argument("-n", type=_positive, default=None, help="index, horizon or digit count")
    p.add_argument("--seq", help="sqrt2, harmonic, e or constant:<q>")
    p.add_argument("--eps", help="rational tolerance such as 1/1000")
    p.add_argument("--bound", help="upper bound for monotone-limit")
    p.set_defaults(run=cmd_gallery)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "axioms" and args.size is None:
        args.size = 20 if args.system == "broken" else 50
    try:
        out = args.run(args)
    except UsageError as exc:
        print(f"decreal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except COMPUTE_ERRORS as exc:
        print(f"decreal: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    text = out.json() if args.format == "json" else out.text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
