import random
import threading
from fractions import Fraction

import pytest

from decreal.gallery import e_cut, sqrt2_numerator
from decreal.real_core import truncate
from decreal.sup_engine import (
    BoundOracle,
    CutOracle,
    OracleInconsistency,
    PreconditionError,
    approach_sequence,
    below_oracle,
    cut_from_name,
    measure,
    nth_root_oracle,
    oracle_from_name,
    singleton_oracle,
    supremum,
)

FIXTURE_NAMES = ["sqrt:2", "sqrt:3", "root:3:5", "root:3:6", "set:x^2<2", "sqrt:7/3", "root:4:10", "sqrt:1/2", "root:5:1", "sqrt:99"]


def test_sqrt2_digits():
    assert supremum(nth_root_oracle(2, 2)).digits(8) == "1.41421356"


@pytest.mark.parametrize("r,k,text", [(2, 2, "1.41421356"), (6, 2, "2.44948974"), (1, 5, "1.00000000")])
def test_nth_root_examples(r, k, text):
    res = supremum(nth_root_oracle(r, k))
    if res.nines_tail(20):
        assert res.normalized(8) == text
    else:
        assert res.digits(8) == text


def test_root_of_one_is_a_nines_case():
    # {x : x**5 < 1} has supremum 1 but no maximum: digits come out 0.999...
    res = supremum(nth_root_oracle(1, 5))
    assert res.digits(4) == "0.9999"
    assert res.nines_tail(30) == 1


def test_singleton_half():
    res = supremum(singleton_oracle(Fraction(1, 2)))
    assert res.digits(5) == "0.49999"
    assert res.nines_tail(40) == 2
    assert res.normalized(5) == "0.50000"


def test_below_one_is_a_nines_case():
    res = supremum(below_oracle(1))
    assert res.digits(6) == "0.999999"
    assert res.nines_tail(50) == 1
    assert res.normalized(3) == "1.000"


def test_no_nines_for_irrationals():
    res = supremum(nth_root_oracle(2, 2))
    # digit 60 of sqrt(2) is a 9; one trailing 9 is not a tail
    assert res.digits(60)[-1] == "9"
    assert res.nines_tail(60) is None
    assert res.nines_tail(120) is None


@pytest.mark.parametrize("name", FIXTURE_NAMES + ["below:7/8", "singleton:1/2"])
def test_bracketing(name):
    res = supremum(oracle_from_name(name))
    check = oracle_from_name(name)
    for m in range(31):
        t = res.approach(m)
        assert not check(t)
        assert check(t + Fraction(1, 10**m))


@pytest.mark.parametrize("name", ["sqrt:2", "root:3:5", "below:7/8"])
def test_least_upper_bound(name):
    res = supremum(oracle_from_name(name))
    top = res.approach(40)
    rng = random.Random(name)
    for _ in range(100):
        beta = top - Fraction(rng.randint(1, 10**12), 10 ** rng.randint(1, 38))
        assert any(res.approach(m) > beta for m in range(41))


def test_approach_sequence():
    res = supremum(nth_root_oracle(2, 2))
    assert approach_sequence(res, 4) == [1, Fraction(14, 10), Fraction(141, 100), Fraction(1414, 1000)]
    seq = approach_sequence(res, 30)
    assert all(a <= b for a, b in zip(seq, seq[1:]))
    for m in range(13):
        assert res.approach(m) * 10**m == sqrt2_numerator(m)
    assert sqrt2_numerator(1) == max(a for a in range(21) if a * a < 200) == 14


def test_singleton_approach():
    res = supremum(singleton_oracle(Fraction(1, 2)))
    assert res.approach(0) == 0
    assert all(res.approach(m) < Fraction(1, 2) <= res.approach(m) + Fraction(1, 10**m) for m in range(20))


def test_integer_part_search_large():
    res = supremum(nth_root_oracle(10**30 + 7, 2))
    assert res.expansion.a0 == 10**15


def test_preconditions():
    with pytest.raises(PreconditionError):
        supremum(BoundOracle(lambda q: q >= 0))
    with pytest.raises(PreconditionError):
        supremum(BoundOracle(lambda q: False))
    with pytest.raises(ValueError):
        nth_root_oracle(-1, 2)
    with pytest.raises(KeyError):
        oracle_from_name("cbrt:2")


def test_non_monotone_oracle_detected():
    flip = BoundOracle(lambda q: q >= 1 and q != 2)
    flip(1)
    with pytest.raises(OracleInconsistency):
        flip(2)


def test_oracle_must_return_bool():
    with pytest.raises(TypeError):
        supremum(BoundOracle(lambda q: 1))


def test_measure_examples():
    assert measure(CutOracle(lambda q: q > 0 and 2 < q * q), 4).text(4) == "1.4142"
    assert measure(CutOracle(lambda q: 1 < q), 4).text(4) == "1.0000"
    assert measure(e_cut(), 4).text(4) == "2.7182"


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_measure_agrees_with_supremum(name):
    # the cut is strict, so an attained rational bound measures as a finite
    # decimal while the supremum engine approaches it through nines
    sup = supremum(oracle_from_name(name))
    assert measure(cut_from_name(name), 30).text(30) == sup.normalized(30, horizon=60)


def test_deterministic_across_threads():
    out = []

    def work():
        out.append(supremum(nth_root_oracle(3, 3)).digits(40))

    threads = [threading.Thread(target=work) for _ in range(6)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(set(out)) == 1
    assert out[0] == supremum(nth_root_oracle(3, 3)).digits(40)


def test_truncation_identity():
    res = supremum(nth_root_oracle(2, 2))
    assert truncate(res.expansion, 4) == Fraction(14142, 10000)
