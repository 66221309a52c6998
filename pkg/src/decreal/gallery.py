"""Worked examples from analysis, computed with exact rationals.

Every claim here is a finite audit over a stated horizon, not a proof.
:func:`abel_demo` is the one floating-point computation in the package and
is labelled as such.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Optional

from .real_core import Enclosure, Interval, floor_scaled
from .sup_engine import BoundOracle, CutOracle, SupremumResult, supremum

# pi to 30 significant digits (standard tables); used only by the Abel demo
PI_30 = "3.14159265358979323846264338328"


class PrecisionShortfall(ArithmeticError):
    pass


class AuditFailure(ValueError):
    pass


@dataclass
class RationalSequence:
    name: str
    term: Callable[[int], Fraction]
    note: str = ""
    # exact a(n+1) - a(n) when cheaper than subtracting terms
    increment: Optional[Callable[[int], Fraction]] = None
    start: int = 0

    def __call__(self, n: int) -> Fraction:
        return self.term(n)

    def gap(self, n: int) -> Fraction:
        if self.increment is not None:
            return self.increment(n)
        return self.term(n + 1) - self.term(n)


# -- sqrt(2) from below ----------------------------------------------------------


def sqrt2_numerator(n: int) -> int:
    """``p_n = max{a : a**2 < 2 * 10**(2n)}``."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return math.isqrt(2 * 10 ** (2 * n) - 1)


def sqrt2_seq(n: int) -> Fraction:
    return Fraction(sqrt2_numerator(n), 10**n)


SQRT2_SEQ = RationalSequence("sqrt2-seq", sqrt2_seq, "p_n / 10**n, p_n = max{a : a^2 < 2*10^(2n)}")


# -- harmonic numbers --------------------------------------------------------------


@lru_cache(maxsize=None)
def _harmonic_table(n: int) -> tuple[Fraction, ...]:
    out = [Fraction(0)]
    for k in range(1, n + 1):
        out.append(out[-1] + Fraction(1, k))
    return tuple(out)


def harmonic(n: int) -> Fraction:
    """``H_n = 1 + 1/2 + ... + 1/n`` (``H_0 = 0``)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    size = 1
    while size < n:
        size *= 2
    return _harmonic_table(max(size, 1))[n]


def harmonic_gap(n: int) -> Fraction:
    """``H_{2n} - H_n = 1/(n+1) + ... + 1/(2n)``, which is at least 1/2."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return sum((Fraction(1, k) for k in range(n + 1, 2 * n + 1)), Fraction(0))


HARMONIC = RationalSequence(
    "harmonic", harmonic, "H_n = 1 + 1/2 + ... + 1/n", increment=lambda n: Fraction(1, n + 1)
)


def constant_seq(c) -> RationalSequence:
    c = Fraction(c)
    return RationalSequence(f"constant {c}", lambda n: c, increment=lambda n: Fraction(0))


# -- finite Cauchy / consecutive-gap audits -------------------------------------------


@dataclass
class CauchyVerdict:
    sequence: str
    eps: Fraction
    horizon: int
    N: Optional[int] = None
    violation: Optional[tuple[int, int]] = None

    @property
    def ok(self) -> bool:
        return self.N is not None

    def render(self) -> str:
        head = f"{self.sequence}: eps={self.eps}, horizon={self.horizon}: "
        if self.ok:
            return head + f"N={self.N} (finite audit, not a proof)"
        i, j = self.violation
        return head + f"violation at i={i}, j={j} (finite audit, not a proof)"


def cauchy_check(s: RationalSequence, eps, horizon: int) -> CauchyVerdict:
    """Least ``N <= horizon // 2`` with ``|s(i) - s(j)| < eps`` for all
    ``N <= i, j <= horizon``.

    ``N`` is kept to the first half of the horizon so the audited window is
    never shorter than ``[N, 2N]``; otherwise N = horizon would pass any
    sequence. If no N qualifies, the worst pair for ``N = horizon // 2`` is
    reported.
    """
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    terms = [s(n) for n in range(s.start, horizon + 1)]
    # suffix max / min give the largest |s(i) - s(j)| over [N, horizon]
    hi_idx = [0] * len(terms)
    lo_idx = [0] * len(terms)
    hi_idx[-1] = lo_idx[-1] = len(terms) - 1
    for k in range(len(terms) - 2, -1, -1):
        hi_idx[k] = k if terms[k] > terms[hi_idx[k + 1]] else hi_idx[k + 1]
        lo_idx[k] = k if terms[k] < terms[lo_idx[k + 1]] else lo_idx[k + 1]
    last = horizon // 2 - s.start
    for k in range(0, last + 1):
        if terms[hi_idx[k]] - terms[lo_idx[k]] < eps:
            return CauchyVerdict(s.name, eps, horizon, N=k + s.start)
    i, j = sorted((lo_idx[last], hi_idx[last]))
    return CauchyVerdict(s.name, eps, horizon, violation=(i + s.start, j + s.start))


@dataclass
class GapVerdict:
    sequence: str
    eps: Fraction
    horizon: int
    n0: Optional[int]

    def render(self) -> str:
        head = f"{self.sequence}: eps={self.eps}, horizon={self.horizon}: "
        if self.n0 is None:
            return head + "no n0 within horizon"
        return head + f"|a(n+1) - a(n)| < eps for n0={self.n0} <= n < {self.horizon} (finite audit)"


def consecutive_gap_check(s: RationalSequence, eps, horizon: int) -> GapVerdict:
    """Least ``n0`` with ``|s(n+1) - s(n)| < eps`` for every
    ``n0 <= n < horizon``."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be > 0")
    n0 = None
    for n in range(horizon - 1, s.start - 1, -1):
        if abs(s.gap(n)) < eps:
            n0 = n
        else:
            break
    return GapVerdict(s.name, eps, horizon, n0)


# -- e ---------------------------------------------------------------------------------


def e_partial_sum(n: int) -> Fraction:
    """``1 + 1/1! + 1/2! + ... + 1/n!``."""
    total, term = Fraction(1), Fraction(1)
    for k in range(1, n + 1):
        term /= k
        total += term
    return total


E_PARTIAL = RationalSequence("e-partial", e_partial_sum, "1 + 1/1! + ... + 1/n!")


def e_enclosure(n: int) -> Interval:
    """``[S_n, S_n + 1/(n*n!)]``.

    The tail is ``1/(n+1)! * (1 + 1/(n+2) + 1/((n+2)(n+3)) + ...)``, which is
    at most ``1/(n+1)! * (n+2)/(n+1) <= 1/(n*n!)`` by comparison with a
    geometric series of ratio ``1/(n+2)``. The upper end is strict.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    s = e_partial_sum(n)
    return s, s + Fraction(1, n * math.factorial(n))


def _e_terms_for(j: int) -> int:
    n = 1
    while n * math.factorial(n) < 10**j:
        n += 1
    return n


def e_real() -> Enclosure:
    return Enclosure(lambda j: e_enclosure(_e_terms_for(j)), name="e")


def e_cut() -> CutOracle:
    """``e < q`` decided from the partial-sum enclosures."""

    def exceeds(q: Fraction) -> bool:
        for n in range(1, 500):
            lo, hi = e_enclosure(n)
            if q >= hi:
                return True
            if q <= lo:
                return False
        raise PrecisionShortfall(f"cannot compare e with {q}")

    return CutOracle(exceeds, name="e")


# -- Euler-Mascheroni -------------------------------------------------------------------


def _atanh_interval(t: Fraction, digits: int, max_terms: int = 100_000) -> Interval:
    """``atanh(t) = sum_{j odd} t**j / j`` for ``0 <= t < 1``; all terms are
    positive and the tail after the term ``t**J/J`` is below
    ``t**(J+2) / ((J+2) * (1 - t**2))``."""
    tol = Fraction(1, 10**digits)
    total, power, t2 = Fraction(0), t, t * t
    j = 1
    while j < max_terms:
        total += power / j
        power *= t2
        tail = power / ((j + 2) * (1 - t2))
        if tail < tol:
            return total, total + tail
        j += 2
    raise PrecisionShortfall(f"atanh({t}) needs more than {max_terms} terms for 1e-{digits}")


def _round_out(iv: Interval, digits: int) -> Interval:
    lo, hi = iv
    return Fraction(floor_scaled(lo, digits), 10**digits), Fraction(-floor_scaled(-hi, digits), 10**digits)


@lru_cache(maxsize=None)
def _ln2(digits: int) -> Interval:
    lo, hi = _atanh_interval(Fraction(1, 3), digits + 2)
    return _round_out((2 * lo, 2 * hi), digits + 2)


def ln_interval(r, digits: int = 40) -> Interval:
    """Rational interval around ``ln r`` for rational ``r >= 1``, via
    ``ln r = k ln 2 + 2 atanh((s-1)/(s+1))`` with ``s = r / 2**k`` in [1, 2)."""
    r = Fraction(r)
    if r < 1:
        raise ValueError("ln_interval needs r >= 1")
    k = 0
    while r >= 2:
        r /= 2
        k += 1
    extra = len(str(k)) + 1
    alo, ahi = _atanh_interval((r - 1) / (r + 1), digits + extra)
    llo, lhi = _ln2(digits + extra)
    return _round_out((k * llo + 2 * alo, k * lhi + 2 * ahi), digits + extra)


def gamma_enclosure(n: int, digits: int = 40) -> Interval:
    """``[H_n - ln(n+1), H_n - ln(n)]``, which contains Euler's constant:
    ``H_n - ln n`` decreases and ``H_n - ln(n+1)`` increases to it. The ln
    values are replaced by their outer rational bounds."""
    if n < 2:
        raise ValueError("n must be >= 2")
    h = harmonic(n)
    _, up_next = ln_interval(n + 1, digits)
    low_n, _ = ln_interval(n, digits)
    return h - up_next, h - low_n


# -- monotone bounded sequences -----------------------------------------------------------


@dataclass
class LimitReport:
    sequence: str
    horizon: int
    sup: SupremumResult
    digits: int
    neighborhoods: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(v is not None for v in self.neighborhoods.values())

    def render(self) -> str:
        lines = [f"{self.sequence}: sup of terms 0..{self.horizon} = {self.sup.digits(self.digits)}…"]
        for m, n in self.neighborhoods.items():
            where = f"entered at n={n}" if n is not None else "NOT entered"
            lines.append(f"  10^-{m} neighborhood: {where}")
        lines.append("finite audit, not a proof")
        return "\n".join(lines)


def monotone_bounded_limit(
    s: RationalSequence, bound, horizon: int = 30, digits: int = 10, max_m: int = 10
) -> LimitReport:
    """Audit that ``s`` is nondecreasing and bounded by ``bound`` up to the
    horizon, take the supremum of its terms with the digit engine, and find
    where the sequence enters each ``10**-m`` neighborhood of it."""
    bound = Fraction(bound)
    terms = [s(n) for n in range(s.start, horizon + 1)]
    for k in range(1, len(terms)):
        if terms[k] < terms[k - 1]:
            raise AuditFailure(f"{s.name} decreases at n={k + s.start}")
    if terms[-1] > bound:
        raise AuditFailure(f"{s.name} exceeds the bound {bound}")
    top = terms[-1]
    oracle = BoundOracle(lambda q: q >= top, name=f"range of {s.name}")
    res = supremum(oracle)
    report = LimitReport(s.name, horizon, res, digits)
    for m in range(max_m + 1):
        # sup < approach(m+1) + 10**-(m+1), so a_n > target gives sup - a_n < 10**-m
        target = res.approach(m + 1) + Fraction(1, 10 ** (m + 1)) - Fraction(1, 10**m)
        hit = next((k + s.start for k, t in enumerate(terms) if t > target), None)
        report.neighborhoods[m] = hit
    return report


# -- Abel's series (floating point, not rigorous) ---------------------------------------


def abel_demo(x: float, N: int = 100_000) -> float:
    """Partial sum ``sum_{n=1..N} (-1)**(n+1) sin(n x) / n`` in floating
    point. Demo only: no error bound is claimed."""
    total = 0.0
    sign = 1.0
    for n in range(1, N + 1):
        total += sign * math.sin(n * x) / n
        sign = -sign
    return total


def pi_float() -> float:
    return float(PI_30)
