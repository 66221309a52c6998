"""Least upper bounds digit by digit, and measurement against a unit.

Given a decidable, monotone predicate "q is an upper bound of S", the integer
part of ``sup S`` is the greatest natural that is not an upper bound, and
each following digit is the greatest digit whose prefix is still not an
upper bound. The same loop, fed with "x is strictly below q units", measures
an object in units ``u, u/10, u/100, ...``.

The engine never asks whether q *is* the supremum. When S has a maximum that
is a finite decimal the digits come out as that decimal minus a tail of
nines; :meth:`SupremumResult.nines_tail` reports this and
:meth:`SupremumResult.normalized` folds it.
"""

from __future__ import annotations

import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .real_core import DEFAULT_CAP, DecimalExpansion, as_fraction, truncate

UNBOUNDED_LIMIT = 10**18
# shortest run of trailing 9s reported as a nines tail
NINES_RUN = 10


class OracleInconsistency(RuntimeError):
    """The oracle answered non-monotonically."""


class PreconditionError(ValueError):
    """The set looks empty, trivial or unbounded."""


class BoundOracle:
    """``is_upper_bound(q)`` for rational ``q``; must be monotone in q.

    Every answer is checked against the tightest answers seen so far (a
    ``True`` below a known ``False`` or vice versa raises
    :class:`OracleInconsistency`). ``undecided`` collects queries the
    predicate could not settle and answered conservatively.
    """

    def __init__(self, predicate: Callable[[Fraction], bool], name: str = ""):
        self._predicate = predicate
        self.name = name
        self.calls = 0
        self._max_non_bound: Optional[Fraction] = None
        self._min_bound: Optional[Fraction] = None
        self.undecided: list[Fraction] = []
        self._lock = threading.Lock()

    def is_upper_bound(self, q) -> bool:
        q = as_fraction(q)
        answer = self._predicate(q)
        if not isinstance(answer, bool):
            raise TypeError(f"oracle {self.name!r} returned {answer!r} for {q}")
        with self._lock:
            self.calls += 1
            if answer:
                if self._max_non_bound is not None and q <= self._max_non_bound:
                    raise OracleInconsistency(
                        f"{self.name}: {q} is an upper bound but {self._max_non_bound} is not"
                    )
                if self._min_bound is None or q < self._min_bound:
                    self._min_bound = q
            else:
                if self._min_bound is not None and q >= self._min_bound:
                    raise OracleInconsistency(
                        f"{self.name}: {q} is not an upper bound but {self._min_bound} is"
                    )
                if self._max_non_bound is None or q > self._max_non_bound:
                    self._max_non_bound = q
        return answer

    __call__ = is_upper_bound

    def __repr__(self) -> str:
        return f"BoundOracle({self.name})"


class CutOracle:
    """``exceeds(q)``: the object is strictly below ``q`` units (``x ≺ q·u``)."""

    def __init__(self, exceeds: Callable[[Fraction], bool], name: str = ""):
        self._exceeds = exceeds
        self.name = name

    def exceeds(self, q) -> bool:
        return self._exceeds(as_fraction(q))

    def bound_oracle(self) -> BoundOracle:
        # q counts as a bound exactly when the object is below q units
        return BoundOracle(self.exceeds, name=self.name)


@dataclass
class SupremumResult:
    expansion: DecimalExpansion
    oracle: BoundOracle
    cap: int = DEFAULT_CAP
    _nines: dict = field(default_factory=dict, repr=False)

    def approach(self, m: int) -> Fraction:
        """The truncation at place ``m``: not an upper bound, and within
        ``10**-m`` below the supremum."""
        return truncate(self.expansion, m)

    def digits(self, n: int) -> str:
        return self.expansion.text(n)

    def nines_tail(self, horizon: Optional[int] = None, min_run: int = NINES_RUN) -> Optional[int]:
        """Start position of a run of 9s that lasts up to ``horizon``
        (default: the cap) and is at least ``min_run`` digits long (or
        covers every digit, for short horizons); None otherwise. A run
        starting at 1 with ``a0`` below the supremum's integer part still
        counts. A long run is evidence, not proof, of an attained bound."""
        horizon = self.cap if horizon is None else horizon
        key = (horizon, min_run)
        if key not in self._nines:
            ds = self.expansion.digits(horizon)
            start = None
            for i in range(horizon, 0, -1):
                if ds[i - 1] != 9:
                    break
                start = i
            if start is not None and horizon - start + 1 < min(min_run, horizon):
                start = None
            self._nines[key] = start
        return self._nines[key]

    def normalized(self, n: int, horizon: Optional[int] = None) -> str:
        """``n`` digits, with a nines tail reaching the horizon folded into
        the next finite decimal (``0.4999… -> 0.5000``)."""
        start = self.nines_tail(horizon)
        if start is None or start > n + 1:
            return self.digits(n)
        value = self.approach(start - 1) + Fraction(1, 10 ** (start - 1))
        scaled = (value.numerator * 10**n) // value.denominator
        ip, frac = divmod(scaled, 10**n)
        return f"{ip}." + str(frac).rjust(n, "0") if n else str(ip)

    @property
    def undecided(self) -> list[Fraction]:
        return self.oracle.undecided


def _greatest_non_bound_natural(oracle: BoundOracle) -> int:
    if oracle(0):
        raise PreconditionError(
            f"{oracle.name}: 0 is already an upper bound (set empty or {{0}})"
        )
    lo, hi = 0, 1
    while not oracle(hi):
        lo, hi = hi, hi * 2
        if hi > UNBOUNDED_LIMIT:
            raise PreconditionError(f"{oracle.name}: no upper bound below {UNBOUNDED_LIMIT}")
    # lo is not a bound, hi is
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if oracle(mid):
            hi = mid
        else:
            lo = mid
    return lo


def supremum(oracle: BoundOracle, cap: int = DEFAULT_CAP) -> SupremumResult:
    """Least upper bound of the set described by ``oracle``.

    The integer part is found by doubling then bisection; digit ``n`` is the
    greatest digit ``d`` (scanning 9 down to 1) such that the prefix with
    ``d`` appended is not an upper bound. Digits are produced lazily.
    """
    a0 = _greatest_non_bound_natural(oracle)
    expansion: DecimalExpansion

    def digit(n: int) -> int:
        base = expansion.scaled(n - 1) * 10
        for d in range(9, 0, -1):
            if not oracle(Fraction(base + d, 10**n)):
                return d
        # the prefix itself is already known not to be a bound
        return 0

    expansion = DecimalExpansion(a0, digit, name=f"sup {oracle.name}")
    return SupremumResult(expansion, oracle, cap)


def measure(oracle: CutOracle, n: Optional[int] = None) -> DecimalExpansion:
    """Measure of the object: ``a0`` is the greatest natural with
    ``not x ≺ a0·u``, then each digit the greatest keeping
    ``not x ≺ a0·u ∘ a1·u1 ∘ ...``. With ``n`` the first n digits are
    computed eagerly."""
    a0 = _greatest_measure_natural(oracle)
    expansion: DecimalExpansion

    def digit(k: int) -> int:
        base = expansion.scaled(k - 1) * 10
        for d in range(9, 0, -1):
            if not oracle.exceeds(Fraction(base + d, 10**k)):
                return d
        return 0

    expansion = DecimalExpansion(a0, digit, name=f"mu {oracle.name}")
    if n:
        expansion.digits(n)
    return expansion


def _greatest_measure_natural(oracle: CutOracle) -> int:
    if oracle.exceeds(0):
        raise PreconditionError(f"{oracle.name}: object is below 0 units")
    lo, hi = 0, 1
    while not oracle.exceeds(hi):
        lo, hi = hi, hi * 2
        if hi > UNBOUNDED_LIMIT:
            raise PreconditionError(f"{oracle.name}: object exceeds {UNBOUNDED_LIMIT} units")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if oracle.exceeds(mid):
            hi = mid
        else:
            lo = mid
    return lo


def approach_sequence(res: SupremumResult, count: int) -> list[Fraction]:
    return [res.approach(m) for m in range(count)]


# -- built-in oracles --------------------------------------------------------


def _power_at_least(q: Fraction, k: int, r: Fraction) -> bool:
    # q**k >= r  with integer arithmetic
    return q.numerator**k * r.denominator >= r.numerator * q.denominator**k


def nth_root_oracle(r, k: int) -> BoundOracle:
    """Upper bounds of ``{x >= 0 : x**k < r}``: ``q >= 0`` and ``q**k >= r``."""
    r = as_fraction(r)
    if r < 0:
        raise ValueError(f"nth_root_oracle needs r >= 0, got {r}")
    if k < 1:
        raise ValueError(f"root index must be >= 1, got {k}")
    return BoundOracle(
        lambda q: q >= 0 and _power_at_least(q, k, r), name=f"root:{k}:{r}"
    )


def nth_root_cut(r, k: int) -> CutOracle:
    """The segment whose k-th power is r units: below ``q`` iff ``r < q**k``."""
    r = as_fraction(r)
    if r < 0:
        raise ValueError(f"nth_root_cut needs r >= 0, got {r}")
    return CutOracle(
        lambda q: q > 0 and _power_above(q, k, r),
        name=f"root:{k}:{r}",
    )


def _power_above(q: Fraction, k: int, r: Fraction) -> bool:
    # q**k > r
    return q.numerator**k * r.denominator > r.numerator * q.denominator**k


def below_oracle(c) -> BoundOracle:
    """Upper bounds of ``{x : 0 <= x < c}`` (also of ``{c}``): ``q >= c``."""
    c = as_fraction(c)
    return BoundOracle(lambda q: q >= c, name=f"below:{c}")


def singleton_oracle(c) -> BoundOracle:
    c = as_fraction(c)
    return BoundOracle(lambda q: q >= c, name=f"singleton:{c}")


def length_cut(c) -> CutOracle:
    """A segment of rational length c: below q units iff ``c < q``."""
    c = as_fraction(c)
    return CutOracle(lambda q: c < q, name=f"length:{c}")


_ROOT_RE = re.compile(r"root:([0-9]+):([0-9]+(?:/[0-9]+)?)")
_SQRT_RE = re.compile(r"sqrt:([0-9]+(?:/[0-9]+)?)")
_ONE_ARG_RE = re.compile(r"(below|singleton):([0-9]+(?:/[0-9]+)?)")
_SET_RE = re.compile(r"set:x\^([0-9]+)<([0-9]+(?:/[0-9]+)?)")


def oracle_from_name(name: str) -> BoundOracle:
    """``sqrt:<r>``, ``root:<k>:<r>``, ``set:x^k<r``, ``below:<q>``,
    ``singleton:<q>``."""
    if m := _SQRT_RE.fullmatch(name):
        return _named(nth_root_oracle(Fraction(m.group(1)), 2), name)
    if m := _ROOT_RE.fullmatch(name):
        return _named(nth_root_oracle(Fraction(m.group(2)), int(m.group(1))), name)
    if m := _SET_RE.fullmatch(name):
        return _named(nth_root_oracle(Fraction(m.group(2)), int(m.group(1))), name)
    if m := _ONE_ARG_RE.fullmatch(name):
        make = below_oracle if m.group(1) == "below" else singleton_oracle
        return _named(make(Fraction(m.group(2))), name)
    raise KeyError(f"unknown oracle {name!r}")


def cut_from_name(name: str) -> CutOracle:
    """Cut oracles under the same names; ``below:<q>`` and ``singleton:<q>``
    both denote a segment of length q."""
    if m := _SQRT_RE.fullmatch(name):
        return _named(nth_root_cut(Fraction(m.group(1)), 2), name)
    if m := _ROOT_RE.fullmatch(name):
        return _named(nth_root_cut(Fraction(m.group(2)), int(m.group(1))), name)
    if m := _SET_RE.fullmatch(name):
        return _named(nth_root_cut(Fraction(m.group(2)), int(m.group(1))), name)
    if m := _ONE_ARG_RE.fullmatch(name):
        return _named(length_cut(Fraction(m.group(2))), name)
    raise KeyError(f"unknown oracle {name!r}")


def _named(o, name):
    o.name = name
    return o
