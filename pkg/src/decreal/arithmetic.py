"""Sums and products of reals, two ways.

``add_sup`` / ``mul_sup`` follow the definitions by suprema of truncations:
``a + b = sup_m (a_(m) + b_(m))`` and ``a * b = sup_m (a_(m) * b_(m))``. The
upper-bound oracle for those sets is decided from the brackets

    a_(m) + b_(m) <= a + b <= a_(m) + b_(m) + 2*10**-m
    a_(m) * b_(m) <= a * b <= (a_(m) + 10**-m) * (b_(m) + 10**-m)

refining m until the query falls outside a bracket. A query sitting exactly
on the true sum or product is never settled; after ``cap`` refinements past
the query's own precision it is answered "upper bound" and recorded, which
turns into a nines tail in the digits.

The ``interval_*`` functions are the production path: outward-rounded
rational interval arithmetic on :class:`Enclosure`.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .real_core import (
    DEFAULT_CAP,
    DecimalExpansion,
    Enclosure,
    Interval,
    SignedReal,
    SignUnknownError,
    Verdict,
    _clip_nonneg,
    absolute,
    ceil_scaled,
    floor_scaled,
    negate,
    separate,
    to_enclosure,
)
from .sup_engine import BoundOracle, SupremumResult, supremum


# -- sup-of-truncations ---------------------------------------------------------


def _start_precision(q: Fraction) -> int:
    # a finite decimal with k places has a denominator of at most k+1 digits
    return max(1, len(str(q.denominator)) - 1)


def _bracket_oracle(a, b, bracket, name: str, cap: int) -> BoundOracle:
    oracle: BoundOracle

    def is_bound(q: Fraction) -> bool:
        start = _start_precision(q)
        for m in range(start, start + cap + 1):
            lower, upper = bracket(a.scaled(m), b.scaled(m), m)
            # lower/upper are (numerator, denominator) pairs
            num, den = lower
            if q.numerator * den < num * q.denominator:
                return False
            num, den = upper
            if q.numerator * den >= num * q.denominator:
                return True
        oracle.undecided.append(q)
        return True

    oracle = BoundOracle(is_bound, name=name)
    return oracle


def _sum_bracket(A: int, B: int, m: int):
    den = 10**m
    return (A + B, den), (A + B + 2, den)


def _product_bracket(A: int, B: int, m: int):
    den = 10 ** (2 * m)
    return (A * B, den), ((A + 1) * (B + 1), den)


def add_sup(a: DecimalExpansion, b: DecimalExpansion, cap: int = DEFAULT_CAP) -> SupremumResult:
    oracle = _bracket_oracle(a, b, _sum_bracket, f"({a.name}) + ({b.name})", cap)
    return supremum(oracle, cap)


def mul_sup(a: DecimalExpansion, b: DecimalExpansion, cap: int = DEFAULT_CAP) -> SupremumResult:
    """Product as a supremum. With a factor that cannot be told from zero the
    engine's precondition check fails (0 looks like an upper bound)."""
    oracle = _bracket_oracle(a, b, _product_bracket, f"({a.name}) * ({b.name})", cap)
    return supremum(oracle, cap)


# -- interval arithmetic ---------------------------------------------------------


def _magnitude_digits(*encs: Enclosure) -> int:
    """Decimal digits of an integer bound on ``1 + sum |x|``."""
    total = 1
    for e in encs:
        lo, hi = e.bounds(0)
        total += max(abs(lo), abs(hi))
    return len(str(math.ceil(total)))


def interval_add(x, y) -> Enclosure:
    x, y = to_enclosure(x), to_enclosure(y)
    if x.exact is not None and y.exact is not None:
        return Enclosure.from_rational(x.exact + y.exact)

    def raw(j: int) -> Interval:
        xlo, xhi = x.bounds(j + 1)
        ylo, yhi = y.bounds(j + 1)
        return xlo + ylo, xhi + yhi

    return Enclosure(raw, name=f"{x.name} + {y.name}")


def interval_sub(x, y) -> Enclosure:
    return interval_add(x, negate(to_enclosure(y)))


def interval_mul(x, y) -> Enclosure:
    x, y = to_enclosure(x), to_enclosure(y)
    if x.exact is not None and y.exact is not None:
        return Enclosure.from_rational(x.exact * y.exact)
    if x.exact == 0 or y.exact == 0:
        return Enclosure.from_rational(0)
    extra = _magnitude_digits(x, y)

    def raw(j: int) -> Interval:
        # width <= wx*|y| + wy*|x| + wx*wy <= 10**-(j+extra) * (|x|+|y|+1)
        xlo, xhi = x.bounds(j + extra)
        ylo, yhi = y.bounds(j + extra)
        ps = (xlo * ylo, xlo * yhi, xhi * ylo, xhi * yhi)
        return min(ps), max(ps)

    return Enclosure(raw, name=f"{x.name} * {y.name}")


def interval_inv(x, cap: int = DEFAULT_CAP) -> Enclosure:
    """``1/x``; raises :class:`SignUnknownError` when ``x`` cannot be
    separated from 0 within ``cap`` digits, ``ZeroDivisionError`` for an
    exact zero."""
    x = to_enclosure(x)
    if x.exact is not None:
        if x.exact == 0:
            raise ZeroDivisionError("inverse of exact zero")
        return Enclosure.from_rational(1 / x.exact)
    verdict, p = separate(x, Enclosure.from_rational(0), cap)
    if verdict is Verdict.INDISTINGUISHABLE:
        raise SignUnknownError(f"inverse of {x.name}", cap)
    lo, hi = x.bounds(p)
    delta = min(abs(lo), abs(hi))
    # width of 1/[lo,hi] is w/(lo*hi) <= w/delta**2
    extra = len(str(math.ceil(1 / delta**2))) + 1

    def raw(j: int) -> Interval:
        lo, hi = x.bounds(max(p, j + extra))
        return 1 / hi, 1 / lo

    return Enclosure(raw, name=f"1/({x.name})")


def interval_div(x, y, cap: int = DEFAULT_CAP) -> Enclosure:
    return interval_mul(x, interval_inv(y, cap))


def iroot(n: int, k: int) -> int:
    """``floor(n ** (1/k))`` for integers ``n >= 0``."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << ((n.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def exact_root(r: Fraction, k: int):
    """The k-th root of r when it is rational, else None."""
    if r < 0:
        return None
    p, q = iroot(r.numerator, k), iroot(r.denominator, k)
    if p**k == r.numerator and q**k == r.denominator:
        return Fraction(p, q)
    return None


def interval_root(x, k: int, cap: int = DEFAULT_CAP) -> Enclosure:
    """Principal k-th root of a non-negative enclosure."""
    x = to_enclosure(x)
    if k < 1:
        raise ValueError("root index must be >= 1")
    if x.exact is not None:
        if x.exact < 0:
            raise ValueError(f"root of negative number {x.exact}")
        r = exact_root(x.exact, k)
        if r is not None:
            return Enclosure.from_rational(r)
    else:
        verdict, p = separate(x, Enclosure.from_rational(0), cap)
        if verdict is Verdict.LESS:
            raise ValueError(f"root of negative value {x.name}")
        if verdict is Verdict.INDISTINGUISHABLE and x.bounds(cap)[0] < 0:
            raise SignUnknownError(f"root of {x.name}", cap)

    def raw(j: int) -> Interval:
        # (hi**(1/k) - lo**(1/k)) <= (hi - lo)**(1/k)
        g = j + 1
        lo, hi = x.bounds(k * g)
        lo = max(lo, Fraction(0))
        a = iroot(floor_scaled(lo, k * g), k)
        c = ceil_scaled(hi, k * g)
        b = iroot(c, k)
        if b**k < c:
            b += 1
        return Fraction(a, 10**g), Fraction(b, 10**g)

    return Enclosure(raw, name=f"root({k}, {x.name})")


# -- signed values -----------------------------------------------------------------


def star(x: SignedReal) -> SignedReal:
    return x.star()


def signed_add(x: SignedReal, y: SignedReal, cap: int = DEFAULT_CAP) -> SignedReal:
    """Same signs add magnitudes. For ``x + y*`` the magnitudes are compared:
    ``x - y`` if ``y < x``, ``(y - x)*`` if ``y > x``; when they cannot be
    separated within ``cap`` the result is marked ``zero_within_cap``."""
    if x.starred == y.starred:
        return SignedReal(interval_add(x.magnitude, y.magnitude), starred=x.starred)
    pos, neg = (y, x) if x.starred else (x, y)
    verdict, _ = separate(pos.magnitude, neg.magnitude, cap)
    diff = interval_sub(pos.magnitude, neg.magnitude)
    if verdict is Verdict.GREATER:
        return SignedReal(_clip_nonneg(diff) if diff.exact is None else diff)
    if verdict is Verdict.LESS:
        flipped = negate(diff)
        return SignedReal(_clip_nonneg(flipped) if flipped.exact is None else flipped, starred=True)
    return SignedReal(absolute(diff), zero_within_cap=diff.exact is None)


def signed_mul(x: SignedReal, y: SignedReal) -> SignedReal:
    """Rule of signs: ``x * y* = (x*y)*`` and ``x* * y* = x*y``."""
    return SignedReal(
        interval_mul(x.magnitude, y.magnitude),
        starred=x.starred != y.starred,
        zero_within_cap=x.zero_within_cap or y.zero_within_cap,
    )


def signed_inv(x: SignedReal, cap: int = DEFAULT_CAP) -> SignedReal:
    return SignedReal(interval_inv(x.magnitude, cap), starred=x.starred)
