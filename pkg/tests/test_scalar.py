from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import leibniz_det
from qcl.errors import ArgumentError, DomainError
from qcl.scalar import (
    LaurentPoly,
    check_parameter,
    close,
    det,
    format_rational,
    laurent_eval,
    laurent_substitute_last,
    parse_rational,
)

z1 = LaurentPoly.variable(0, 2)
z2 = LaurentPoly.variable(1, 2)


def test_eval_examples():
    assert laurent_eval(z1 + z2, [2, 3]) == 5
    assert laurent_eval(LaurentPoly.variable(0, 1, -1), [F(1, 2)]) == 2
    assert laurent_eval(LaurentPoly.constant(1, 0), []) == 1


def test_eval_rejects_zero_with_negative_exponent():
    with pytest.raises(DomainError):
        laurent_eval(LaurentPoly.variable(0, 1, -1), [0])
    with pytest.raises(ArgumentError):
        laurent_eval(z1, [1])


def test_substitute_last_examples():
    one = LaurentPoly.constant(1, 1)
    w1 = LaurentPoly.variable(0, 1)
    assert laurent_substitute_last(z1 + z2, 1) == w1 + one
    assert laurent_substitute_last(z1 * LaurentPoly.variable(1, 2, -1), F(1, 4)) == w1 * 4
    q = F(1, 2)
    assert laurent_substitute_last(z1 + z2 * q**-2, 1) == w1 + 4


def test_no_zero_coefficients_stored():
    p = z1 - z1 + z2
    assert p.terms == {(0, 1): 1}
    assert LaurentPoly({(1, 0): 0}, 2).terms == {}


def test_mismatched_slots():
    with pytest.raises(ArgumentError):
        LaurentPoly({(1,): 1, (1, 2): 1})
    with pytest.raises(ArgumentError):
        z1 + LaurentPoly.variable(0, 3)


def test_rational_io():
    assert parse_rational("-3/7") == F(-3, 7)
    assert format_rational(F(-3, 7)) == "-3/7"
    assert format_rational(F(4)) == "4"
    for bad in ["1/0", "abc", "1//2"]:
        with pytest.raises(ArgumentError):
            parse_rational(bad)


def test_json_roundtrip():
    p = z1 * F(-3, 7) + z2 * z2 * F(1, 2) - 5
    data = p.to_json()
    assert {"exponents": [1, 0], "coeff": "-3/7"} in data
    assert LaurentPoly.from_json(data) == p


def test_parameter_checks():
    with pytest.raises(ArgumentError):
        check_parameter("q", 0)
    with pytest.raises(ArgumentError):
        check_parameter("q", 1)
    with pytest.warns(UserWarning):
        check_parameter("q", 2)
    assert check_parameter("q", "1/2") == F(1, 2)


def test_close_is_exact_for_rationals():
    assert not close(F(1, 3), F(1, 3) + F(1, 10**30))
    assert close(1 / 3, F(1, 3))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_det_matches_leibniz(n):
    import random

    rnd = random.Random(n)
    for _ in range(20):
        m = [[F(rnd.randint(-4, 4), rnd.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        assert det(m) == leibniz_det(m)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5)
nonzero = rationals.filter(lambda x: x != 0)


@st.composite
def polys(draw, nvars=2):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(-2, 2)] * nvars), rationals, max_size=4
        )
    )
    return LaurentPoly(terms, nvars)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_ring_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == LaurentPoly({}, 2)


@settings(max_examples=60, deadline=None)
@given(polys(), nonzero, nonzero)
def test_substitute_then_eval(p, v, x1):
    assert laurent_eval(laurent_substitute_last(p, v), [x1]) == laurent_eval(p, [x1, v])
