from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from scaledyn import (INFINITE, InsufficientDataError, MultiscalePattern,
                      SymbolSequence, classify, expand_pattern, sequence_metric,
                      shift)

MSO_PATTERN = MultiscalePattern(
    [Fraction(2, 9), Fraction(2, 3), Fraction(5, 6)], (4, 3, INFINITE))


def test_expand_pattern_blocks():
    s = expand_pattern(MSO_PATTERN)
    assert s.prefix == (Fraction(2, 9),) * 4 + (Fraction(2, 3),) * 3
    assert s.tail == ("const", Fraction(5, 6))
    assert s.symbol_at(8) == Fraction(5, 6)
    assert s.symbol_at(100) == Fraction(5, 6)


def test_expand_constant_and_finite():
    c = expand_pattern(MultiscalePattern([Fraction(1, 2)], (INFINITE,)))
    assert c.prefix == () and c.tail == ("const", Fraction(1, 2))
    w = expand_pattern(MultiscalePattern([Fraction(1, 4), Fraction(3, 4)], (2, 1)))
    assert w.prefix == (Fraction(1, 4), Fraction(1, 4), Fraction(3, 4))
    assert w.tail is None


def test_finite_window_raises_past_end():
    w = SymbolSequence((Fraction(1, 4), Fraction(3, 4)))
    with pytest.raises(InsufficientDataError):
        w.symbol_at(3)
    with pytest.raises(InsufficientDataError):
        sequence_metric(w, w, 5)


def test_metric_identical_and_bound():
    s = expand_pattern(MSO_PATTERN)
    value, bound = sequence_metric(s, s, 20)
    assert value == 0.0
    assert bound == 2.0 ** -20


def test_metric_extreme_sequences():
    zeros = SymbolSequence((), ("const", 0))
    ones = SymbolSequence((), ("const", 1))
    value, bound = sequence_metric(zeros, ones, 50)
    # each term is 2**-i * 1/2; the full series sums to 1/2
    assert abs(value - 0.5) <= bound + 1e-12


def test_metric_single_difference():
    s = SymbolSequence((0,), ("const", 0))
    s2 = SymbolSequence((1,), ("const", 0))
    value, _ = sequence_metric(s, s2, 10)
    assert abs(value - 0.25) < 1e-15


def test_metric_truncation_error():
    s = expand_pattern(MSO_PATTERN)
    s2 = SymbolSequence((), ("period", (Fraction(1, 8), Fraction(7, 8))))
    v1, b1 = sequence_metric(s, s2, 10)
    v2, _ = sequence_metric(s, s2, 20)
    assert abs(v1 - v2) <= b1


@settings(max_examples=200)
@given(st.tuples(*[st.lists(st.floats(0, 1, allow_nan=False), min_size=8,
                            max_size=8) for _ in range(3)]))
def test_metric_axioms(triple):
    a, b, c = (SymbolSequence(tuple(x)) for x in triple)
    dab, _ = sequence_metric(a, b, 8)
    dba, _ = sequence_metric(b, a, 8)
    dac, _ = sequence_metric(a, c, 8)
    dcb, _ = sequence_metric(c, b, 8)
    assert dab == dba
    assert dab <= dac + dcb + 1e-12
    same, _ = sequence_metric(a, a, 8)
    assert same == 0.0


def test_shift_drops_first_symbol():
    s = expand_pattern(MSO_PATTERN)
    t = shift(s)
    assert t.window(6) == s.window(7)[1:]
    # k shifts equal dropping k symbols
    u = s
    for _ in range(9):
        u = shift(u)
    assert u.window(5) == s.window(14)[9:]


def test_shift_fixed_point_and_period():
    c = SymbolSequence((), ("const", Fraction(1, 2)))
    assert shift(c) == c
    p = SymbolSequence((), ("period", (Fraction(1, 4), Fraction(3, 4))))
    q = shift(p)
    assert q.window(4) == p.window(5)[1:]


def test_classify_constant_tail():
    rep = classify(expand_pattern(MSO_PATTERN), horizon=30)
    assert rep.status == "eventually-periodic"
    assert rep.period == 1
    assert rep.preperiod == 7


def test_classify_periodic():
    p = SymbolSequence((), ("period", (Fraction(1, 4), Fraction(3, 4))))
    rep = classify(p, horizon=10)
    assert rep.status == "eventually-periodic"
    assert rep.period == 2
    assert rep.preperiod == 0


def test_classify_pattern_always_periodic():
    for pattern in (MSO_PATTERN,
                    MultiscalePattern([Fraction(1, 2)], (INFINITE,)),
                    MultiscalePattern([Fraction(1, 5), Fraction(4, 5)],
                                      (2, INFINITE))):
        rep = classify(expand_pattern(pattern), horizon=24)
        assert rep.status == "eventually-periodic"


def test_classify_inconclusive_on_aperiodic_digits():
    # binary digits of sqrt(2) - 1; no period exists, none must be found
    import math
    x = math.sqrt(2) - 1
    digits = []
    for _ in range(64):
        x *= 2
        digits.append(int(x))
        x -= int(x)
    rep = classify(SymbolSequence(tuple(digits)), horizon=64)
    assert rep.status == "no-period-detected-within-horizon"
    assert rep.inconclusive
