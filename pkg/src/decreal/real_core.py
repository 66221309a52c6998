"""Decimal expansions, rational enclosures and digit extraction.

Two carriers are used for non-negative reals:

* :class:`DecimalExpansion` - an integer part plus a lazily produced,
  memoized digit stream. Used when the digits themselves are known (periodic
  decimals, digits emitted by the supremum engine).
* :class:`Enclosure` - a precision-indexed family of nested rational intervals
  ``[lo(m), hi(m)]`` with ``hi(m) - lo(m) <= 10**-m``. Used for anything
  computed. Enclosures may be signed.

Equality of reals is never decided. :func:`compare_at` answers at an explicit
precision and may say ``INDISTINGUISHABLE``.
"""

from __future__ import annotations

import enum
import math
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .tower import PeriodicDecimal, RationalPair, periodic_to_rat

DEFAULT_CAP = int(os.environ.get("DECREAL_CAP", "120"))
GUARD_DIGITS = 10

Interval = tuple[Fraction, Fraction]


class SignUnknownError(ArithmeticError):
    """The sign of a value could not be decided within the precision cap."""

    def __init__(self, what: str, cap: int):
        self.cap = cap
        super().__init__(f"{what}: cannot separate from zero within {cap} digits")


def as_fraction(x) -> Fraction:
    if isinstance(x, RationalPair):
        return x.to_fraction()
    return Fraction(x)


def pow10(m: int) -> Fraction:
    return Fraction(10) ** m


def floor_scaled(x: Fraction, m: int) -> int:
    """``floor(x * 10**m)``."""
    if m >= 0:
        return (x.numerator * 10**m) // x.denominator
    return x.numerator // (x.denominator * 10**-m)


def ceil_scaled(x: Fraction, m: int) -> int:
    return -floor_scaled(-x, m)


# -- decimal expansions -------------------------------------------------------


class DecimalExpansion:
    """``a0 . a1 a2 a3 ...`` with digits produced on demand.

    ``digit_fn(n)`` is called with ``n = 1, 2, 3, ...`` in order, exactly once
    per position; digits may depend on the earlier ones. Results are stored,
    so repeated queries agree.
    """

    def __init__(self, a0: int, digit_fn: Callable[[int], int], name: str = ""):
        if a0 < 0:
            raise ValueError("integer part of a non-negative expansion must be >= 0")
        self.a0 = a0
        self.name = name
        self._digit_fn = digit_fn
        self._digits: list[int] = []
        # _scaled[m] == a0*10**m + a1*10**(m-1) + ... + am
        self._scaled: list[int] = [a0]
        self._lock = threading.Lock()

    @classmethod
    def from_periodic(cls, d: PeriodicDecimal) -> DecimalExpansion:
        if d.sign < 0:
            raise ValueError("expansions carry non-negative reals; use SignedReal")
        periodic_to_rat(d)  # rejects nines tails
        return cls(d.integer_part, d.digit, name=str(d))

    @classmethod
    def from_digits(cls, a0: int, digits, tail: int = 0, name: str = "") -> DecimalExpansion:
        """Finite digit list followed by an endless repetition of ``tail``.
        No normalization happens here; ``tail=9`` builds a nines tail."""
        digits = list(digits)

        def digit(n: int) -> int:
            return digits[n - 1] if n <= len(digits) else tail

        return cls(a0, digit, name=name)

    def digit(self, n: int) -> int:
        if n < 1:
            raise ValueError("digit positions start at 1")
        if n > len(self._digits):
            with self._lock:
                while len(self._digits) < n:
                    k = len(self._digits) + 1
                    d = self._digit_fn(k)
                    if d not in range(10):
                        raise ValueError(f"digit {k} of {self.name or 'expansion'} is {d!r}")
                    self._digits.append(d)
                    self._scaled.append(self._scaled[-1] * 10 + d)
        return self._digits[n - 1]

    def digits(self, n: int) -> list[int]:
        if n:
            self.digit(n)
        return self._digits[:n]

    def scaled(self, m: int) -> int:
        """Truncation at place ``m`` times ``10**m``, as an int."""
        if m > 0:
            self.digit(m)
        return self._scaled[m]

    def text(self, n: int) -> str:
        return f"{self.a0}." + "".join(map(str, self.digits(n)))

    def __repr__(self) -> str:
        return f"DecimalExpansion({self.name or self.text(len(self._digits))})"


def truncate(a: DecimalExpansion, m: int) -> Fraction:
    """The finite decimal ``a0 + a1/10 + ... + am/10**m``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return Fraction(a.scaled(m), 10**m)


def from_periodic(d: PeriodicDecimal) -> DecimalExpansion:
    return DecimalExpansion.from_periodic(d)


# -- enclosures ---------------------------------------------------------------


class Enclosure:
    """A real given by nested rational intervals.

    ``raw(j)`` must return an interval containing the value with width at most
    ``10**-j``; it need not be nested or tidy. :meth:`bounds` rounds it
    outward to a decimal grid and intersects it with the previous level, so
    the published intervals satisfy ``width(m) <= 10**-m`` and
    ``bounds(m+1) ⊆ bounds(m)``. ``lawful=True`` skips that step for sources
    that already satisfy both laws.
    """

    def __init__(
        self,
        raw: Callable[[int], Interval],
        *,
        exact: Optional[Fraction] = None,
        lawful: bool = False,
        name: str = "",
    ):
        self._raw = raw
        self.exact = exact
        self._lawful = lawful
        self.name = name
        self._levels: list[Interval] = []
        self._lock = threading.Lock()

    @classmethod
    def from_rational(cls, r) -> Enclosure:
        r = as_fraction(r)
        return cls(lambda m: (r, r), exact=r, lawful=True, name=str(r))

    @classmethod
    def from_expansion(cls, a: DecimalExpansion) -> Enclosure:
        def raw(m: int) -> Interval:
            lo = truncate(a, m)
            return lo, lo + Fraction(1, 10**m)

        return cls(raw, lawful=True, name=a.name)

    @classmethod
    def from_interval(cls, lo, hi) -> Enclosure:
        """A fixed interval, only valid for precisions its width allows;
        meant for tests and small examples."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        return cls(lambda m: (lo, hi), lawful=True)

    def bounds(self, m: int) -> Interval:
        if m < 0:
            raise ValueError("precision must be >= 0")
        if self.exact is not None:
            return self.exact, self.exact
        if m >= len(self._levels):
            with self._lock:
                while len(self._levels) <= m:
                    self._levels.append(self._next_level(len(self._levels)))
        return self._levels[m]

    def _next_level(self, m: int) -> Interval:
        lo, hi = self._raw(m if self._lawful else m + 1)
        if lo > hi:
            raise ValueError(f"enclosure {self.name!r} produced an empty interval at {m}")
        if self._lawful:
            return lo, hi
        g = m + 2
        lo = Fraction(floor_scaled(lo, g), 10**g)
        hi = Fraction(ceil_scaled(hi, g), 10**g)
        if m:
            plo, phi = self._levels[m - 1]
            lo, hi = max(lo, plo), min(hi, phi)
            if lo > hi:
                raise ValueError(f"enclosure {self.name!r} is inconsistent at precision {m}")
        return lo, hi

    def lo(self, m: int) -> Fraction:
        return self.bounds(m)[0]

    def hi(self, m: int) -> Fraction:
        return self.bounds(m)[1]

    def __repr__(self) -> str:
        return f"Enclosure({self.name or '?'})"


def from_rational(r) -> Enclosure:
    return Enclosure.from_rational(r)


def to_enclosure(x) -> Enclosure:
    if isinstance(x, Enclosure):
        return x
    if isinstance(x, DecimalExpansion):
        return Enclosure.from_expansion(x)
    if isinstance(x, PeriodicDecimal):
        return Enclosure.from_rational(periodic_to_rat(x).to_fraction())
    if isinstance(x, SignedReal):
        return x.enclosure()
    return Enclosure.from_rational(as_fraction(x))


# -- comparison ----------------------------------------------------------------


class Verdict(enum.Enum):
    LESS = "LESS"
    GREATER = "GREATER"
    INDISTINGUISHABLE = "INDISTINGUISHABLE"

    def __str__(self) -> str:
        return self.value


def compare_at(x, y, m: int) -> Verdict:
    """``LESS`` if ``hi_x(m) < lo_y(m)``, ``GREATER`` symmetrically, else
    ``INDISTINGUISHABLE``, which means ``|x - y| <= 2 * 10**-m``."""
    if m < 0:
        raise ValueError("precision must be >= 0")
    xlo, xhi = to_enclosure(x).bounds(m)
    ylo, yhi = to_enclosure(y).bounds(m)
    if xhi < ylo:
        return Verdict.LESS
    if yhi < xlo:
        return Verdict.GREATER
    return Verdict.INDISTINGUISHABLE


def separate(x, y, cap: int = DEFAULT_CAP, start: int = GUARD_DIGITS) -> tuple[Verdict, int]:
    """Escalate precision (doubling from ``start``) until ``x`` and ``y`` are
    told apart or ``cap`` is reached. Returns the verdict and the precision
    it was reached at."""
    m = min(start, cap)
    while True:
        v = compare_at(x, y, m)
        if v is not Verdict.INDISTINGUISHABLE or m >= cap:
            return v, m
        m = min(2 * m, cap)


# -- digit extraction -----------------------------------------------------------


@dataclass(frozen=True)
class Digits:
    """``n`` digits that hold for every real in the probed enclosure.

    ``more`` is False only when the value is known to be exactly the printed
    finite decimal.
    """

    negative: bool
    int_part: int
    digits: str
    precision_used: int
    more: bool = True
    indeterminate_at: Optional[int] = None

    @property
    def plain(self) -> str:
        body = str(self.int_part) + ("." + self.digits if self.digits else "")
        return ("-" if self.negative else "") + body

    def render(self, notation: str = "minus") -> str:
        body = str(self.int_part) + ("." + self.digits if self.digits else "")
        tail = "…" if self.more else ""
        if self.negative and notation == "star":
            return body + tail + "*"
        return ("-" if self.negative else "") + body + tail

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class Indeterminate:
    """Digit extraction stalled: at the probed precision the enclosure still
    contains the grid point ``boundary`` of spacing ``10**-position``, so the
    digit at ``position`` (0 is the integer part) is undecided.

    It prints as the boundary's own digits followed by ``?``: the value is
    within ``10**-precision_used`` of that finite decimal, on an unknown side.
    """

    position: int
    boundary: Fraction
    n: int
    precision_used: int

    @property
    def negative(self) -> bool:
        return self.boundary < 0

    @property
    def plain(self) -> str:
        return _fixed(self.boundary, self.n)

    def render(self, notation: str = "minus") -> str:
        text = _fixed(abs(self.boundary), self.n)
        if self.boundary < 0:
            return text + "?*" if notation == "star" else "-" + text + "?"
        return text + "?"

    def __str__(self) -> str:
        return self.render()


def _fixed(x: Fraction, n: int) -> str:
    """Exact finite decimal ``x`` (a multiple of 10**-n) with n places."""
    sign = "-" if x < 0 else ""
    scaled = floor_scaled(abs(x), n)
    ip, frac = divmod(scaled, 10**n)
    return sign + str(ip) + ("." + str(frac).rjust(n, "0") if n else "")


def _digits_of_interval(lo: Fraction, hi: Fraction, n: int, p: int, exact: bool):
    """Digits for a non-negative interval, or the coarsest straddled level."""
    a, b = floor_scaled(lo, n), floor_scaled(hi, n)
    if a == b:
        ip, frac = divmod(a, 10**n)
        more = not (exact and lo == Fraction(a, 10**n))
        return Digits(False, ip, str(frac).rjust(n, "0") if n else "", p, more)
    for k in range(n + 1):
        if floor_scaled(lo, k) != floor_scaled(hi, k):
            g = Fraction(floor_scaled(lo, k) + 1, 10**k)
            return k, g
    raise AssertionError("unreachable")


def digits_from_enclosure(x, n: int, cap: int = DEFAULT_CAP):
    """First ``n`` decimals of ``x``, correct for every real in the enclosure.

    Works at precision ``n + GUARD_DIGITS`` and doubles on failure up to
    ``cap``. Returns :class:`Digits`, or :class:`Indeterminate` when the
    enclosure at ``cap`` still contains a grid point of spacing ``10**-k``
    for some ``k <= n``. Negative values get digits of their magnitude.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    enc = to_enclosure(x)
    exact = enc.exact is not None
    p = min(n + GUARD_DIGITS, cap)
    while True:
        lo, hi = enc.bounds(p)
        if lo >= 0:
            res = _digits_of_interval(lo, hi, n, p, exact)
        elif hi < 0:
            res = _digits_of_interval(-hi, -lo, n, p, exact)
            if isinstance(res, Digits):
                res = Digits(True, res.int_part, res.digits, p, res.more)
            else:
                res = (res[0], -res[1])
        else:
            # sign straddle: zero is the grid point at every level
            res = (0, Fraction(0))
        if isinstance(res, Digits):
            return res
        if p >= cap:
            k, g = res
            return Indeterminate(k, g, n, p)
        p = min(2 * p, cap)


# -- signed reals ----------------------------------------------------------------


class SignedReal:
    """A non-negative magnitude ``x`` or its star element ``x*`` (with
    ``x + x* = 0``).

    ``zero_within_cap`` marks results whose sign could not be settled because
    the value is indistinguishable from zero at the precision cap; the
    magnitude then encloses ``|value|`` and contains 0.
    """

    def __init__(self, magnitude, starred: bool = False, zero_within_cap: bool = False):
        if isinstance(magnitude, SignedReal):
            raise TypeError("magnitude must be unsigned")
        self.magnitude = to_enclosure(magnitude)
        if self.magnitude.exact is not None and self.magnitude.exact < 0:
            raise ValueError("magnitude must be non-negative")
        # 0* is just 0
        if self.magnitude.exact == 0:
            starred = False
        self.starred = starred
        self.zero_within_cap = zero_within_cap

    @classmethod
    def of(cls, r) -> SignedReal:
        r = as_fraction(r)
        return cls(Enclosure.from_rational(abs(r)), starred=r < 0)

    @classmethod
    def from_enclosure(cls, e: Enclosure, cap: int = DEFAULT_CAP) -> SignedReal:
        """Split a signed enclosure into magnitude and sign."""
        if e.exact is not None:
            return cls.of(e.exact)
        v, _ = separate(e, Enclosure.from_rational(0), cap)
        if v is Verdict.GREATER:
            return cls(_clip_nonneg(e))
        if v is Verdict.LESS:
            return cls(_clip_nonneg(negate(e)), starred=True)
        return cls(absolute(e), zero_within_cap=True)

    def star(self) -> SignedReal:
        return SignedReal(self.magnitude, not self.starred, self.zero_within_cap)

    def enclosure(self) -> Enclosure:
        return negate(self.magnitude) if self.starred else self.magnitude

    def __repr__(self) -> str:
        return f"SignedReal({self.magnitude!r}{'*' if self.starred else ''})"


def negate(e: Enclosure) -> Enclosure:
    if e.exact is not None:
        return Enclosure.from_rational(-e.exact)

    def raw(m: int) -> Interval:
        lo, hi = e.bounds(m)
        return -hi, -lo

    return Enclosure(raw, lawful=True, name=f"-({e.name})")


def absolute(e: Enclosure) -> Enclosure:
    if e.exact is not None:
        return Enclosure.from_rational(abs(e.exact))

    def raw(m: int) -> Interval:
        lo, hi = e.bounds(m)
        if lo >= 0:
            return lo, hi
        if hi <= 0:
            return -hi, -lo
        return Fraction(0), max(-lo, hi)

    # |.| is 1-Lipschitz and monotone on nested intervals
    return Enclosure(raw, lawful=True, name=f"|{e.name}|")


def _clip_nonneg(e: Enclosure) -> Enclosure:
    """For an enclosure already known to be positive."""

    def raw(m: int) -> Interval:
        lo, hi = e.bounds(m)
        return max(lo, Fraction(0)), hi

    return Enclosure(raw, lawful=True, name=e.name)


Real = Union[DecimalExpansion, Enclosure]
