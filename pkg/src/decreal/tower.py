"""Natural numbers, integers and rationals built as pairs, plus periodic decimals.

The production arithmetic on :class:`Natural` is Python's positional ``int``.
The recursive definitions (``m + 0 = m``, ``m + (n+1) = (m+n) + 1`` and
``m * 0 = 0``, ``m * (n+1) = m*n + m``) are kept as reference functions and
used by the test-suite as oracles.

Integers are classes of pairs ``(a, b)`` standing for ``a - b``; rationals are
classes of pairs ``(p, q)`` with ``p*s == q*r`` as the equivalence. Both are
stored in canonical form so that ``==`` on the dataclasses is class equality.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union


class NinesTailError(ValueError):
    """A periodic decimal whose period is all nines was given where a
    normalized one is required."""

    def __init__(self, value: PeriodicDecimal):
        self.value = value
        self.normalized = value.normalize()
        super().__init__(
            f"{value} ends in a tail of nines; use the normalized form {self.normalized}"
        )


# -- naturals ---------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Natural:
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or isinstance(self.value, bool):
            raise TypeError(f"Natural needs an int, got {type(self.value).__name__}")
        if self.value < 0:
            raise ValueError(f"Natural must be >= 0, got {self.value}")

    def __add__(self, other: Natural) -> Natural:
        return nat_add(self, other)

    def __mul__(self, other: Natural) -> Natural:
        return nat_mul(self, other)

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)


def nat_add(m: Natural, n: Natural) -> Natural:
    return Natural(m.value + n.value)


def nat_mul(m: Natural, n: Natural) -> Natural:
    return Natural(m.value * n.value)


def _succ(n: int) -> int:
    return n + 1


def nat_add_recursive(m: int, n: int) -> int:
    """``m + 0 := m``, ``m + (n+1) := (m+n) + 1``, unrolled into a loop.

    Only the successor function is used; the recursion depth is ``n``, which
    is why it is written iteratively.
    """
    if m < 0 or n < 0:
        raise ValueError("naturals only")
    total = m
    k = 0
    while k != n:
        # m + (k+1) := (m + k) + 1
        total = _succ(total)
        k = _succ(k)
    return total


def nat_mul_recursive(m: int, n: int) -> int:
    """``m * 0 := 0``, ``m * (n+1) := m*n + m`` with addition from
    :func:`nat_add_recursive`."""
    if m < 0 or n < 0:
        raise ValueError("naturals only")
    product = 0
    k = 0
    while k != n:
        product = nat_add_recursive(product, m)
        k = _succ(k)
    return product


# -- integers as pairs --------------------------------------------------------


@dataclass(frozen=True)
class IntegerPair:
    """The class ``[(a, b)]`` of the integer ``a - b``; canonical when
    ``min(a, b) == 0``."""

    a: Natural
    b: Natural

    @classmethod
    def of(cls, a: int | Natural, b: int | Natural = 0) -> IntegerPair:
        a = a if isinstance(a, Natural) else Natural(a)
        b = b if isinstance(b, Natural) else Natural(b)
        return cls(a, b).canonical()

    @classmethod
    def from_int(cls, z: int) -> IntegerPair:
        return cls(Natural(max(z, 0)), Natural(max(-z, 0)))

    def canonical(self) -> IntegerPair:
        low = min(self.a.value, self.b.value)
        return IntegerPair(Natural(self.a.value - low), Natural(self.b.value - low))

    def is_canonical(self) -> bool:
        return min(self.a.value, self.b.value) == 0

    def equivalent(self, other: IntegerPair) -> bool:
        return self.a + other.b == self.b + other.a

    def __int__(self) -> int:
        return self.a.value - self.b.value

    def __add__(self, other: IntegerPair) -> IntegerPair:
        return int_add(self, other)

    def __mul__(self, other: IntegerPair) -> IntegerPair:
        return int_mul(self, other)

    def __neg__(self) -> IntegerPair:
        return IntegerPair(self.b, self.a)

    def __lt__(self, other: IntegerPair) -> bool:
        # a - b < c - d  iff  a + d < c + b
        return (self.a + other.b).value < (other.a + self.b).value

    def __le__(self, other: IntegerPair) -> bool:
        return not other < self

    def __str__(self) -> str:
        return str(int(self))


def int_add(p: IntegerPair, q: IntegerPair) -> IntegerPair:
    return IntegerPair(p.a + q.a, p.b + q.b).canonical()


def int_mul(p: IntegerPair, q: IntegerPair) -> IntegerPair:
    a, b, c, d = p.a, p.b, q.a, q.b
    return IntegerPair(a * c + b * d, a * d + b * c).canonical()


# -- rationals as pairs -------------------------------------------------------


@dataclass(frozen=True)
class RationalPair:
    """Reduced fraction ``num/den`` with ``den > 0``.

    ``RationalPair(p, q)`` accepts any representative and canonicalizes it;
    ``RationalPair(-2, 4) == RationalPair(-1, 2)``.
    """

    num: int
    den: int = 1

    def __post_init__(self):
        num, den = int(self.num), int(self.den)
        if den == 0:
            raise ZeroDivisionError(f"RationalPair({num}, 0)")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(num, den)
        object.__setattr__(self, "num", num // g)
        object.__setattr__(self, "den", den // g)

    @classmethod
    def from_fraction(cls, f: Fraction | int) -> RationalPair:
        f = Fraction(f)
        return cls(f.numerator, f.denominator)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    @staticmethod
    def equivalent_pairs(a: int, b: int, c: int, d: int) -> bool:
        """``(a, b) ~ (c, d)`` iff ``a*d == b*c``."""
        return a * d == b * c

    def __add__(self, other: RationalPair) -> RationalPair:
        return rat_add(self, other)

    def __sub__(self, other: RationalPair) -> RationalPair:
        return rat_add(self, -other)

    def __mul__(self, other: RationalPair) -> RationalPair:
        return rat_mul(self, other)

    def __truediv__(self, other: RationalPair) -> RationalPair:
        return rat_div(self, other)

    def __neg__(self) -> RationalPair:
        return RationalPair(-self.num, self.den)

    def __lt__(self, other: RationalPair) -> bool:
        return rat_compare(self, other) < 0

    def __le__(self, other: RationalPair) -> bool:
        return rat_compare(self, other) <= 0

    def __gt__(self, other: RationalPair) -> bool:
        return rat_compare(self, other) > 0

    def __ge__(self, other: RationalPair) -> bool:
        return rat_compare(self, other) >= 0

    def __str__(self) -> str:
        return format_rational(self)


def rat_add(p: RationalPair, q: RationalPair) -> RationalPair:
    return RationalPair(p.num * q.den + q.num * p.den, p.den * q.den)


def rat_mul(p: RationalPair, q: RationalPair) -> RationalPair:
    return RationalPair(p.num * q.num, p.den * q.den)


def rat_div(p: RationalPair, q: RationalPair) -> RationalPair:
    if q.num == 0:
        raise ZeroDivisionError(f"division of {p} by zero")
    return RationalPair(p.num * q.den, p.den * q.num)


def rat_compare(p: RationalPair, q: RationalPair) -> int:
    """-1, 0 or 1; denominators are positive so cross-multiplying keeps order."""
    lhs, rhs = p.num * q.den, q.num * p.den
    return (lhs > rhs) - (lhs < rhs)


def archimedean_witness(x: RationalPair, y: RationalPair) -> Natural:
    """Least natural ``n`` with ``x < n*y``."""
    if x.num <= 0 or y.num <= 0:
        raise ValueError(f"archimedean_witness needs positive inputs, got {x}, {y}")
    # floor(x / y) + 1
    return Natural((x.num * y.den) // (x.den * y.num) + 1)


# -- embeddings N -> Z -> Q ---------------------------------------------------


def nat_to_int(n: Natural) -> IntegerPair:
    return IntegerPair(n, Natural(0))


def int_to_rat(z: IntegerPair) -> RationalPair:
    return RationalPair(int(z), 1)


# -- periodic decimals --------------------------------------------------------

Digits = tuple[int, ...]


def _digits(text: str) -> Digits:
    return tuple(int(c) for c in text)


def _shift_in(ip: int, ds: Digits) -> int:
    """``ip`` followed by the digits ``ds``, as one integer. Chunked to stay
    under the interpreter's limit on str -> int conversion."""
    value = ip
    for i in range(0, len(ds), 1000):
        chunk = ds[i:i + 1000]
        value = value * 10 ** len(chunk) + int("".join(map(str, chunk)))
    return value


def _minimal_period(per: Digits) -> Digits:
    n = len(per)
    for size in range(1, n + 1):
        if n % size == 0 and per[:size] * (n // size) == per:
            return per[:size]
    return per


@dataclass(frozen=True)
class PeriodicDecimal:
    """``sign * integer_part . preperiod (period)``.

    An empty period means the expansion terminates. Instances are not forced
    into canonical form; :meth:`normalize` produces it, and
    :func:`periodic_to_rat` refuses nines tails.
    """

    sign: int
    integer_part: int
    preperiod: Digits = ()
    period: Digits = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")
        if self.integer_part < 0:
            raise ValueError("integer_part must be a natural number")
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        for d in self.preperiod + self.period:
            if d not in range(10):
                raise ValueError(f"not a decimal digit: {d!r}")

    @property
    def has_nines_tail(self) -> bool:
        return bool(self.period) and all(d == 9 for d in self.period)

    def normalize(self) -> PeriodicDecimal:
        """Canonical form: no nines tail, no zero period, shortest period and
        preperiod, and no negative zero."""
        sign, ip, pre, per = self.sign, self.integer_part, self.preperiod, self.period
        if per and all(d == 9 for d in per):
            # i.pre(9) == i.pre + 10**-len(pre)
            scaled = _shift_in(ip, pre) + 1
            text = str(scaled).rjust(len(pre) + 1, "0")
            ip = int(text[: len(text) - len(pre)])
            pre = _digits(text[len(text) - len(pre):]) if pre else ()
            per = ()
        if per and all(d == 0 for d in per):
            per = ()
        if per:
            per = _minimal_period(per)
            while pre and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = per[-1:] + per[:-1]
        else:
            while pre and pre[-1] == 0:
                pre = pre[:-1]
        if ip == 0 and not pre and not per:
            sign = 1
        return PeriodicDecimal(sign, ip, pre, per)

    def digit(self, n: int) -> int:
        """Digit ``n >= 1`` after the decimal point."""
        if n < 1:
            raise ValueError("digit positions start at 1")
        if n <= len(self.preperiod):
            return self.preperiod[n - 1]
        if not self.period:
            return 0
        return self.period[(n - len(self.preperiod) - 1) % len(self.period)]

    def __str__(self) -> str:
        return format_periodic(self)


def rat_to_periodic(p: RationalPair) -> PeriodicDecimal:
    """Long division; the first repeated remainder closes the cycle, so the
    period found is the minimal one."""
    sign = -1 if p.num < 0 else 1
    ip, rem = divmod(abs(p.num), p.den)
    digits: list[int] = []
    seen: dict[int, int] = {}
    while rem and rem not in seen:
        seen[rem] = len(digits)
        q, rem = divmod(rem * 10, p.den)
        digits.append(q)
    if rem:
        start = seen[rem]
        pre, per = tuple(digits[:start]), tuple(digits[start:])
    else:
        pre, per = tuple(digits), ()
    if ip == 0 and not digits:
        sign = 1
    return PeriodicDecimal(sign, ip, pre, per)


def periodic_to_rat(d: PeriodicDecimal) -> RationalPair:
    if d.has_nines_tail:
        raise NinesTailError(d)
    head = _shift_in(d.integer_part, d.preperiod)
    if d.period:
        num = _shift_in(head, d.period) - head
        den = 10 ** len(d.preperiod) * (10 ** len(d.period) - 1)
    else:
        num, den = head, 10 ** len(d.preperiod)
    return RationalPair(d.sign * num, den)


# -- text formats ------------------------------------------------------------

_INT_RE = re.compile(r"-?[0-9]+")
_RAT_RE = re.compile(r"(-?[0-9]+)/([0-9]+)")
_PERIODIC_RE = re.compile(r"(-?)([0-9]+)(?:\.([0-9]*)(?:\(([0-9]+)\))?)?")


def parse_integer(text: str) -> IntegerPair:
    if not _INT_RE.fullmatch(text):
        raise ValueError(f"not an integer literal: {text!r}")
    return IntegerPair.from_int(int(text))


def format_integer(z: IntegerPair) -> str:
    return str(int(z))


def parse_rational(text: str) -> RationalPair:
    """``"p/q"`` or a bare integer."""
    m = _RAT_RE.fullmatch(text)
    if m:
        return RationalPair(int(m.group(1)), int(m.group(2)))
    if _INT_RE.fullmatch(text):
        return RationalPair(int(text), 1)
    raise ValueError(f"not a rational literal: {text!r}")


def format_rational(p: RationalPair) -> str:
    return str(p.num) if p.den == 1 else f"{p.num}/{p.den}"


def parse_periodic(text: str, normalize: bool = True) -> PeriodicDecimal:
    """Parse ``"i"``, ``"i.pre"`` or ``"i.pre(per)"`` with an optional sign.

    With ``normalize`` (the default) nines tails are folded into the next
    finite decimal, so ``"1.4(9)"`` parses to ``1.5``.
    """
    m = _PERIODIC_RE.fullmatch(text)
    if not m or (m.group(3) == "" and m.group(4) is None):
        raise ValueError(f"not a periodic decimal literal: {text!r}")
    sign = -1 if m.group(1) else 1
    d = PeriodicDecimal(
        sign, int(m.group(2)), _digits(m.group(3) or ""), _digits(m.group(4) or "")
    )
    return d.normalize() if normalize else d


def format_periodic(d: PeriodicDecimal) -> str:
    out = ("-" if d.sign < 0 else "") + str(d.integer_part)
    if d.preperiod or d.period:
        out += "." + "".join(map(str, d.preperiod))
    if d.period:
        out += "(" + "".join(map(str, d.period)) + ")"
    return out


Number = Union[IntegerPair, RationalPair, PeriodicDecimal]
