from fractions import Fraction

import pytest

from decreal.gallery import (
    E_PARTIAL,
    HARMONIC,
    SQRT2_SEQ,
    AuditFailure,
    RationalSequence,
    abel_demo,
    cauchy_check,
    consecutive_gap_check,
    constant_seq,
    e_enclosure,
    e_partial_sum,
    gamma_enclosure,
    harmonic,
    harmonic_gap,
    ln_interval,
    monotone_bounded_limit,
    pi_float,
    sqrt2_numerator,
    sqrt2_seq,
)
from decreal.real_core import truncate
from decreal.sup_engine import nth_root_oracle, supremum

GAMMA = Fraction("0.57721566490153286060651209008240243104215933593992")
E_REF = Fraction("2.71828182845904523536028747135266249775724709369995957496696762772")


def test_sqrt2_seq_examples():
    assert sqrt2_seq(0) == 1
    assert sqrt2_seq(1) == Fraction(14, 10)
    assert sqrt2_seq(4) == Fraction(14142, 10**4)


def test_sqrt2_seq_brackets():
    for n in range(41):
        p = sqrt2_numerator(n)
        assert Fraction(p, 10**n) ** 2 < 2 <= Fraction(p + 1, 10**n) ** 2


def test_sqrt2_seq_matches_supremum():
    res = supremum(nth_root_oracle(2, 2))
    for n in range(13):
        assert sqrt2_seq(n) == truncate(res.expansion, n)


def test_no_rational_square_root_of_two():
    assert not any(p * p == 2 * q * q for q in range(1, 1001) for p in range(q, 2 * q))


def test_cauchy_examples():
    v = cauchy_check(SQRT2_SEQ, Fraction(1, 1000), 20)
    assert v.ok and v.N <= 4
    # N = 4 also works, as does every later N
    assert all(abs(sqrt2_seq(i) - sqrt2_seq(j)) < Fraction(1, 1000) for i in range(4, 21) for j in range(4, 21))
    assert cauchy_check(constant_seq(Fraction(1, 2)), Fraction(1, 10), 10).N == 0
    h = cauchy_check(HARMONIC, Fraction(1, 2), 2048)
    assert not h.ok
    i, j = h.violation
    assert j == 2 * i
    assert harmonic(j) - harmonic(i) >= Fraction(1, 2)
    assert "finite audit" in h.render()


def test_harmonic_gap_examples():
    assert harmonic_gap(1) == Fraction(1, 2)
    assert harmonic_gap(2) == Fraction(7, 12)
    assert harmonic_gap(64) >= Fraction(1, 2)
    assert all(harmonic_gap(n) >= Fraction(1, 2) for n in range(1, 257))


def test_consecutive_gap_examples():
    assert consecutive_gap_check(HARMONIC, Fraction(1, 100), 1000).n0 == 100
    assert consecutive_gap_check(SQRT2_SEQ, Fraction(1, 100), 40).n0 == 2
    assert consecutive_gap_check(constant_seq(3), Fraction(1, 10**6), 50).n0 == 0


def test_e_enclosure():
    lo, hi = e_enclosure(10)
    assert hi - lo == Fraction(1, 10 * 3628800)
    # both ends, and e itself, start 2.7182818
    assert all(int(x * 10**7) == 27182818 for x in (lo, hi, E_REF))
    assert lo < E_REF < hi
    # S_1 = 2 and the tail bound 1/(1*1!) = 1
    assert e_enclosure(1) == (2, 3)
    for n in range(1, 31):
        lo, hi = e_enclosure(n)
        nlo, nhi = e_enclosure(n + 1)
        assert lo <= nlo and nhi <= hi
        assert lo < E_REF < hi
    lo, hi = e_enclosure(30)
    assert hi - lo < Fraction(1, 10**30)


def test_e_partial_sums():
    assert e_partial_sum(0) == 1
    assert e_partial_sum(3) == Fraction(8, 3)
    assert E_PARTIAL(2) == Fraction(5, 2)


def test_ln_interval():
    for r, ref in ((2, Fraction("0.693147180559945309417232121458")), (10, Fraction("2.302585092994045684017991454684"))):
        lo, hi = ln_interval(r, 25)
        assert lo <= ref <= hi
        assert hi - lo < Fraction(1, 10**24)
    assert ln_interval(1, 10) == (0, 0)
    with pytest.raises(ValueError):
        ln_interval(Fraction(1, 2))


def test_gamma_enclosure():
    lo, hi = gamma_enclosure(50)
    assert hi - lo < Fraction(2, 100)
    assert lo <= Fraction(5772, 10000) <= hi
    lo2, hi2 = gamma_enclosure(2)
    assert lo2 < GAMMA < hi2
    assert hi2 - lo2 < Fraction(41, 100)
    prev = None
    for n in range(2, 101):
        lo, hi = gamma_enclosure(n, digits=30)
        assert lo < GAMMA < hi
        if prev:
            assert prev[0] <= lo and hi <= prev[1]
        prev = (lo, hi)


def test_monotone_bounded_limit():
    rep = monotone_bounded_limit(SQRT2_SEQ, 2)
    assert rep.sup.digits(4) == "1.4142"
    assert rep.ok
    half = monotone_bounded_limit(constant_seq(Fraction(1, 2)), 1)
    assert half.sup.normalized(1) == "0.5"
    e = monotone_bounded_limit(E_PARTIAL, 3, horizon=25)
    assert e.sup.digits(5) == "2.71828"
    assert e.ok


def test_monotone_limit_audits():
    down = RationalSequence("down", lambda n: Fraction(1, n + 1))
    with pytest.raises(AuditFailure):
        monotone_bounded_limit(down, 2)
    with pytest.raises(AuditFailure):
        monotone_bounded_limit(SQRT2_SEQ, 1)


def test_abel_demo():
    pi = pi_float()
    left, right = abel_demo(pi - 0.01, 100_000), abel_demo(pi + 0.01, 100_000)
    target = (pi - 0.01) / 2
    assert abs(left - target) < 0.01
    assert abs(right + target) < 0.01
    assert abel_demo(0.0, 1000) == 0.0
