"""Extensive comparative systems and measure mappings, checked on samples.

A system is a carrier of objects with an equivalence ``~``, a strict order
``≺`` and a composition ``∘``. :func:`check_axioms` tests the nine axioms on
a finite carrier and :func:`check_measure_map` tests

    (1) x ~ y  iff  mu(x) == mu(y)
    (2) x ≺ y  iff  mu(x) <  mu(y)
    (3) mu(x ∘ y) == mu(x) + mu(y)

over all pairs. These are finite audits: a PASS means no counterexample was
found in the sample.

Neutral elements are kept out of carriers; axiom 8 (``x != y`` implies
``x ≺ x∘y``) fails for them.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Optional, Sequence

from .tower import Natural

ITERATION_CAP = 10_000

AXIOMS = (
    "~ is an equivalence relation",
    "(x ≺ y) ∧ (y ≺ z) ⇒ (x ≺ z)",
    "(x ≺ y) ⇒ ¬(y ≺ x)",
    "(x ≺ y) ∨ (y ≺ x) ∨ (x ~ y)",
    "x ∘ (y ∘ z) ~ (x ∘ y) ∘ z",
    "x ∘ y ~ y ∘ x",
    "x ≺ y ⇔ x ∘ z ≺ y ∘ z",
    "x ≠ y ⇒ x ≺ x ∘ y",
    "∃ n ∈ ℕ: x ≺ n·y",
)


class HarnessError(RuntimeError):
    """A relation failed to decide (raised or returned a non-boolean)."""


class NonArchimedeanError(RuntimeError):
    """No multiple of y exceeded x within the iteration cap."""


@dataclass
class ComparativeSystem:
    name: str
    carrier: Sequence[Any]
    equiv: Callable[[Any, Any], bool]
    precedes: Callable[[Any, Any], bool]
    compose: Callable[[Any, Any], Any]

    def eq(self, x, y) -> bool:
        return _decide(self.equiv, x, y, "~")

    def lt(self, x, y) -> bool:
        return _decide(self.precedes, x, y, "≺")

    def multiple(self, n: int, y):
        """``n·y = y ∘ ... ∘ y``."""
        acc = y
        for _ in range(n - 1):
            acc = self.compose(acc, y)
        return acc


def _decide(rel, x, y, symbol: str) -> bool:
    try:
        answer = rel(x, y)
    except Exception as exc:  # noqa: BLE001 - any failure to decide is a harness error
        raise HarnessError(f"{symbol} failed on ({x!r}, {y!r}): {exc}") from exc
    if not isinstance(answer, bool):
        raise HarnessError(f"{symbol} returned {answer!r} on ({x!r}, {y!r})")
    return answer


@dataclass
class CheckResult:
    index: int
    statement: str
    passed: bool
    witness: Optional[tuple] = None
    note: str = ""

    def line(self, label: str = "AXIOM") -> str:
        if self.passed:
            return f"{label} {self.index}: PASS" + (f" ({self.note})" if self.note else "")
        return f"{label} {self.index}: FAIL {_fmt_witness(self.witness)}"


def _fmt_witness(w) -> str:
    return "(" + ", ".join(str(v) for v in w) + ")" if w else "()"


@dataclass
class Report:
    system: str
    sample_size: int
    results: list[CheckResult] = field(default_factory=list)
    label: str = "AXIOM"

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed]

    def render(self) -> str:
        lines = [r.line(self.label) for r in self.results]
        verdict = "no counterexample found" if self.passed else "counterexample found"
        lines.append(f"# {self.system}: sample of {self.sample_size}, {verdict}")
        return "\n".join(lines)


def _first(pred, it):
    for args in it:
        if not pred(*args):
            return args
    return None


def check_axioms(s: ComparativeSystem, cap: int = ITERATION_CAP) -> Report:
    A = list(s.carrier)
    pairs = list(itertools.product(A, repeat=2))
    triples = itertools.product(A, repeat=3)
    report = Report(s.name, len(A))
    add = report.results.append

    def equivalence(x, y, z):
        return s.eq(x, x) and (s.eq(y, x) or not s.eq(x, y)) and (
            not (s.eq(x, y) and s.eq(y, z)) or s.eq(x, z)
        )

    add(_result(1, _first(equivalence, itertools.product(A, repeat=3))))
    add(_result(2, _first(lambda x, y, z: not (s.lt(x, y) and s.lt(y, z)) or s.lt(x, z),
                          itertools.product(A, repeat=3))))
    add(_result(3, _first(lambda x, y: not s.lt(x, y) or not s.lt(y, x), pairs)))
    add(_result(4, _first(lambda x, y: s.lt(x, y) or s.lt(y, x) or s.eq(x, y), pairs)))
    add(_result(5, _first(
        lambda x, y, z: s.eq(s.compose(x, s.compose(y, z)), s.compose(s.compose(x, y), z)),
        itertools.product(A, repeat=3))))
    add(_result(6, _first(lambda x, y: s.eq(s.compose(x, y), s.compose(y, x)), pairs)))
    add(_result(7, _first(
        lambda x, y, z: s.lt(x, y) == s.lt(s.compose(x, z), s.compose(y, z)), triples)))
    add(_result(8, _first(lambda x, y: x == y or s.lt(x, s.compose(x, y)), pairs)))

    largest, bad = 0, None
    for x, y in pairs:
        try:
            largest = max(largest, archimedean_witness_obj(s, x, y, cap).value)
        except NonArchimedeanError:
            bad = (x, y)
            break
    add(_result(9, bad, note=f"max witness n={largest}" if bad is None else ""))
    return report


def _result(k: int, witness, note: str = "") -> CheckResult:
    return CheckResult(k, AXIOMS[k - 1], witness is None, witness, note)


def archimedean_witness_obj(s: ComparativeSystem, x, y, cap: int = ITERATION_CAP) -> Natural:
    """Least ``n`` with ``x ≺ n·y``, by composing y with itself."""
    acc, n = y, 1
    while not s.lt(x, acc):
        if n >= cap:
            raise NonArchimedeanError(f"{x!r} is not below {cap}·{y!r}")
        acc = s.compose(acc, y)
        n += 1
    return Natural(n)


def check_measure_map(s: ComparativeSystem, mu: Callable[[Any], Any]) -> Report:
    A = list(s.carrier)
    pairs = list(itertools.product(A, repeat=2))
    report = Report(s.name, len(A), label="PROPERTY")
    report.results = [
        CheckResult(1, "x ~ y ⇔ μ(x) = μ(y)", True),
        CheckResult(2, "x ≺ y ⇔ μ(x) < μ(y)", True),
        CheckResult(3, "μ(x ∘ y) = μ(x) + μ(y)", True),
    ]
    checks = (
        lambda x, y: s.eq(x, y) == (mu(x) == mu(y)),
        lambda x, y: s.lt(x, y) == (mu(x) < mu(y)),
        lambda x, y: mu(s.compose(x, y)) == mu(x) + mu(y),
    )
    for res, check in zip(report.results, checks):
        w = _first(check, pairs)
        if w is not None:
            res.passed, res.witness = False, w
    return report


# -- shipped instances -------------------------------------------------------------


_NOTHING = object()


def _pair_off(x: tuple, y: tuple) -> int:
    """Direct pairing: match elements one by one and see which side runs out
    first. -1 if x runs out first, 1 if y does, 0 if both together."""
    for left, right in itertools.zip_longest(x, y, fillvalue=_NOTHING):
        if left is _NOTHING:
            return -1
        if right is _NOTHING:
            return 1
    return 0


def cardinality_system(size: int = 50, seed: int = 0, max_tokens: int = 12) -> ComparativeSystem:
    """Finite collections of tokens. Composition is disjoint union, realized
    as concatenation (positions keep the two parts apart); comparison is
    by pairing elements off."""
    rng = random.Random(seed)
    alphabet = "abcdefghij"
    carrier = [
        tuple(rng.choice(alphabet) for _ in range(rng.randint(1, max_tokens)))
        for _ in range(size)
    ]
    return ComparativeSystem(
        "cardinality",
        carrier,
        equiv=lambda x, y: _pair_off(x, y) == 0,
        precedes=lambda x, y: _pair_off(x, y) < 0,
        compose=lambda x, y: x + y,
    )


@dataclass(frozen=True)
class Segment:
    """An idealized segment of rational length (in units of u)."""

    length: Fraction

    def __str__(self) -> str:
        return f"seg({self.length})"


def length_system(size: int = 50, seed: int = 0) -> ComparativeSystem:
    """Segments compared side by side and composed by concatenation."""
    rng = random.Random(seed)
    carrier = [
        Segment(Fraction(rng.randint(1, 20), rng.randint(1, 10))) for _ in range(size)
    ]
    return ComparativeSystem(
        "length",
        carrier,
        equiv=lambda x, y: x.length == y.length,
        precedes=lambda x, y: x.length < y.length,
        compose=lambda x, y: Segment(x.length + y.length),
    )


def broken_system(size: int = 20, seed: int = 0) -> ComparativeSystem:
    """Length instance with ``≺`` replaced by ``≤``; axiom 3 fails at x = y."""
    base = length_system(size, seed)
    base.name = "broken-length"
    base.precedes = lambda x, y: x.length <= y.length
    return base


def cardinality_measure(x: tuple) -> int:
    return sum(1 for _ in x)


def length_measure(x: Segment) -> Fraction:
    return x.length


SYSTEMS = {
    "cardinality": (cardinality_system, cardinality_measure),
    "length": (length_system, length_measure),
    "broken": (broken_system, length_measure),
}


# -- the diagonal of the unit square ------------------------------------------------


def diagonal_below(q: Fraction) -> bool:
    """Comparison of the unit square's diagonal with q units:
    ``diag ≺ q·u`` iff ``2 < q**2``."""
    return q > 0 and 2 * q.denominator**2 < q.numerator**2


def refute_rational_diagonal(max_den: int = 100) -> list[tuple[Fraction, int]]:
    """Try every rational value ``v = p/q`` with ``q <= max_den`` and
    ``0 < v <= 2`` as the measure of the diagonal (with μ(u) = 1).

    A segment of length v has measure v, so (1) demands ``diag ~ seg(v)``,
    i.e. neither is below the other. Returns, per candidate, the property it
    violates; a candidate that survived would be returned with 0.
    """
    out = []
    seen = set()
    for q in range(1, max_den + 1):
        for p in range(1, 2 * q + 1):
            v = Fraction(p, q)
            if v in seen:
                continue
            seen.add(v)
            # equal measures but one object is strictly below the other
            strict = diagonal_below(v) or v * v < 2
            out.append((v, 1 if strict else 0))
    return out
