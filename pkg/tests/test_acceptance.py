"""Acceptance suite: one PASS/FAIL line per criterion.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are printed even
under capture) or directly with ``python tests/test_acceptance.py``.
"""

import io
import random
import sys
import time
from contextlib import redirect_stdout
from decimal import Decimal
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from _fixtures import ENCLOSURES, ref, sqrt_enc, sqrt_exp  # noqa: E402
from decreal.arithmetic import (  # noqa: E402
    add_sup,
    interval_add,
    interval_inv,
    interval_mul,
    mul_sup,
)
from decreal.cli import main  # noqa: E402
from decreal.expr import evaluate, parse  # noqa: E402
from decreal.gallery import (  # noqa: E402
    HARMONIC,
    SQRT2_SEQ,
    abel_demo,
    cauchy_check,
    consecutive_gap_check,
    e_enclosure,
    gamma_enclosure,
    harmonic_gap,
    pi_float,
    sqrt2_numerator,
)
from decreal.magnitudes import (  # noqa: E402
    broken_system,
    cardinality_measure,
    cardinality_system,
    check_axioms,
    check_measure_map,
    length_measure,
    length_system,
)
from decreal.real_core import (  # noqa: E402
    DecimalExpansion,
    Digits,
    Enclosure,
    Indeterminate,
    Verdict,
    compare_at,
    digits_from_enclosure,
)
from decreal.sup_engine import oracle_from_name, supremum  # noqa: E402
from decreal.tower import RationalPair, parse_periodic, periodic_to_rat, rat_to_periodic  # noqa: E402


def report(k: int, ok: bool, detail: str, capsys=None):
    line = f"CRITERION {k}: {'PASS' if ok else 'FAIL'} ({detail})"
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


# -- criteria ---------------------------------------------------------------------------


def criterion_1():
    t = time.perf_counter()
    code, out = run_cli("measure", "--oracle", "sqrt:2", "-n", "4")
    dt = time.perf_counter() - t
    return code == 0 and out == "1.4142\n" and dt < 1, f"output {out.strip()!r} in {dt:.3f}s"


def criterion_2():
    t = time.perf_counter()
    prod = digits_from_enclosure(evaluate(parse("sqrt(2)*sqrt(3)")), 30)
    root = digits_from_enclosure(evaluate(parse("root(2,6)")), 30)
    sup = mul_sup(sqrt_exp(2), sqrt_exp(3))
    six = supremum(oracle_from_name("root:2:6"))
    dt = time.perf_counter() - t
    ok = (
        isinstance(prod, Digits)
        and prod.plain == root.plain
        and sup.normalized(30) == six.normalized(30) == prod.plain
        and dt < 5
    )
    return ok, f"{prod.plain} both ways, interval and sup-of-truncations, {dt:.2f}s"


def criterion_3():
    failures = 0
    names = ("sqrt:2", "sqrt:3", "root:3:5", "below:7/8", "singleton:1/2")
    for name in names:
        res = supremum(oracle_from_name(name))
        # a fresh oracle so the check does not lean on the engine's own answers
        check = oracle_from_name(name)
        for m in range(31):
            t = res.approach(m)
            if check(t) or not check(t + Fraction(1, 10**m)):
                failures += 1
    return failures == 0, f"{len(names)} oracles, m = 0..30, {failures} failures"


def _random_periodic(rng):
    ip = rng.randint(0, 99)
    pre = "".join(str(rng.randrange(10)) for _ in range(rng.randint(0, 3)))
    per = "".join(str(rng.randrange(10)) for _ in range(rng.randint(0, 3)))
    text = f"{ip}.{pre}({per})" if per else (f"{ip}.{pre}" if pre else str(ip))
    d = parse_periodic(text)
    return d, periodic_to_rat(d).to_fraction()


def _agrees(sup_res, enc, exact, n):
    """No digit contradiction between the two routes at n places."""
    t = sup_res.approach(n)
    if not t <= exact <= t + Fraction(1, 10**n):
        return False
    got = digits_from_enclosure(enc, n)
    if isinstance(got, Indeterminate):
        # only allowed when the exact value sits on the straddled grid point
        return exact == got.boundary
    if got.plain == sup_res.digits(n):
        return True
    # nines case: exact value on the n-place grid, sup digits one ulp below
    return exact == Fraction(int(got.plain.replace(".", "")), 10**n) and t == exact - Fraction(1, 10**n)


def criterion_4():
    rng = random.Random(20240601)
    n, pairs, bad, indet = 20, 0, 0, 0
    while pairs < 1000:
        (dx, x), (dy, y) = _random_periodic(rng), _random_periodic(rng)
        if x == 0 or y == 0:
            continue
        pairs += 1
        a, b = DecimalExpansion.from_periodic(dx), DecimalExpansion.from_periodic(dy)
        ea, eb = Enclosure.from_expansion(a), Enclosure.from_expansion(b)
        for sup_res, enc, exact in ((add_sup(a, b), interval_add(ea, eb), x + y), (mul_sup(a, b), interval_mul(ea, eb), x * y)):
            if isinstance(digits_from_enclosure(enc, n), Indeterminate):
                indet += 1
            if not _agrees(sup_res, enc, exact, n):
                bad += 1
    return bad == 0, f"{pairs} pairs, add and mul at {n} digits, {bad} contradictions, {indet} grid-boundary Indeterminate"


def _random_value(rng):
    kind = rng.randrange(3)
    q = Fraction(rng.randint(1, 999), rng.randint(1, 99))
    if kind == 0:
        return Enclosure.from_rational(q)
    if kind == 1:
        return Enclosure.from_expansion(DecimalExpansion.from_periodic(rat_to_periodic(RationalPair.from_fraction(q))))
    return sqrt_enc(rng.randint(2, 99))


def criterion_5():
    rng = random.Random(7)
    m, violations = 30, 0

    def overlap(x, y):
        return compare_at(x, y, m) is Verdict.INDISTINGUISHABLE

    for _ in range(500):
        a, b, c = (_random_value(rng) for _ in range(3))
        checks = [
            overlap(interval_add(interval_add(a, b), c), interval_add(a, interval_add(b, c))),
            overlap(interval_mul(interval_mul(a, b), c), interval_mul(a, interval_mul(b, c))),
            overlap(interval_add(a, b), interval_add(b, a)),
            overlap(interval_mul(a, b), interval_mul(b, a)),
            overlap(interval_mul(a, interval_add(b, c)), interval_add(interval_mul(a, b), interval_mul(a, c))),
            overlap(interval_add(a, Enclosure.from_rational(0)), a),
            overlap(interval_mul(a, Enclosure.from_rational(1)), a),
        ]
        lo, hi = interval_mul(a, interval_inv(a)).bounds(m)
        checks.append(lo <= 1 <= hi)
        v = compare_at(a, b, m)
        if v is not Verdict.INDISTINGUISHABLE:
            checks.append(compare_at(interval_add(a, c), interval_add(b, c), m - 1) in (v, Verdict.INDISTINGUISHABLE))
        violations += checks.count(False)
    return violations == 0, f"500 triples at precision {m}, {violations} violations"


def criterion_6():
    a = all(
        Fraction(p, 10**n) ** 2 < 2 <= Fraction(p + 1, 10**n) ** 2
        for n in range(41)
        for p in [sqrt2_numerator(n)]
    )
    b = not any(p * p == 2 * q * q for q in range(1, 1001) for p in range(q, 2 * q))
    v = cauchy_check(SQRT2_SEQ, Fraction(1, 10**6), 50)
    c = v.ok and v.N is not None
    return a and b and c, f"(a) n <= 40 {a}, (b) q <= 1000 {b}, (c) N = {v.N}"


def criterion_7():
    n0s = {k: consecutive_gap_check(HARMONIC, Fraction(1, 10**k), 10**k + 10).n0 for k in range(1, 5)}
    gaps = all(harmonic_gap(n) >= Fraction(1, 2) for n in range(1, 257))
    ok = all(v is not None for v in n0s.values()) and gaps
    return ok, f"harmonic n0 by eps 10^-k: {n0s}; harmonic_gap >= 1/2 for n = 1..256: {gaps}"


def criterion_8():
    failures = 0
    for factory, value in ENCLOSURES.values():
        enc = factory()
        exact = Fraction(value)
        prev = None
        for m in range(61):
            lo, hi = enc.bounds(m)
            if hi - lo > Fraction(1, 10**m):
                failures += 1
            if prev and not (prev[0] <= lo and hi <= prev[1]):
                failures += 1
            # the reference carries 110 significant digits
            slack = Fraction(1, 10**100)
            if not lo - slack <= exact <= hi + slack:
                failures += 1
            prev = (lo, hi)
    lo, hi = e_enclosure(30)
    narrow = hi - lo < Fraction(1, 10**30)
    holds_e = lo < Fraction(ref(lambda: Decimal(1).exp())) < hi
    # a width below 10^-30 cannot hold the 16-digit literal itself, so
    # "contains" is read as: every point of the interval starts with it
    prefix = all(int(x * 10**15) == 2718281828459045 for x in (lo, hi))
    ok = failures == 0 and narrow and holds_e and prefix
    return ok, (
        f"{len(ENCLOSURES)} constructors, m = 0..60, {failures} failures; "
        f"e_enclosure(30) width {float(hi - lo):.1e}, reads 2.718281828459045…"
    )


def criterion_9():
    lo, hi = gamma_enclosure(50)
    first = hi - lo < Fraction(2, 100) and lo <= Fraction("0.5772") <= hi
    prev, nested = None, True
    for n in range(2, 101):
        cur = gamma_enclosure(n, digits=30)
        if prev and not (prev[0] <= cur[0] and cur[1] <= prev[1]):
            nested = False
        prev = cur
    return first and nested, f"gamma(50) = [{float(lo):.5f}, {float(hi):.5f}], nested for n = 2..100: {nested}"


def criterion_10():
    card, length = cardinality_system(size=50), length_system(size=50)
    axioms_ok = check_axioms(card).passed and check_axioms(length).passed
    measure_ok = check_measure_map(card, cardinality_measure).passed and check_measure_map(length, length_measure).passed
    broken = check_axioms(broken_system())
    fails = broken.failures()
    broken_ok = bool(fails) and fails[0].witness is not None
    detail = f"instances pass: {axioms_ok and measure_ok}; broken: {fails[0].line() if fails else 'no failure'}"
    return axioms_ok and measure_ok and broken_ok, detail


def criterion_11():
    code, out = run_cli("compare", "0.(9)", "1", "-m", "50")
    node = parse("1.4(9)")
    exact = evaluate(node).exact
    ok = code == 0 and out == "INDISTINGUISHABLE\n" and exact == Fraction(3, 2)
    return ok, f"compare -> {out.strip()}, 1.4(9) -> {exact}"


def criterion_12():
    pi = pi_float()
    left, right = abel_demo(pi - 0.01, 100_000), abel_demo(pi + 0.01, 100_000)
    target = (pi - 0.01) / 2
    ok = left * right < 0 and abs(left - target) < 0.01 and abs(right + target) < 0.01
    return ok, f"S(pi-0.01) = {left:.5f}, S(pi+0.01) = {right:.5f}, target ±{target:.5f} (float demo)"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11, criterion_12]


@pytest.mark.parametrize("k", range(1, 13))
def test_criterion(k, capsys):
    ok, detail = CRITERIA[k - 1]()
    report(k, ok, detail, capsys)


if __name__ == "__main__":
    start = time.perf_counter()
    passed = 0
    for k, fn in enumerate(CRITERIA, 1):
        ok, detail = fn()
        print(f"CRITERION {k}: {'PASS' if ok else 'FAIL'} ({detail})")
        passed += ok
    print(f"# {passed}/12 passed in {time.perf_counter() - start:.1f}s")
    sys.exit(0 if passed == 12 else 1)
