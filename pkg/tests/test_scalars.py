from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from src.errors import GenericityError
from src.scalars import (
    derive_params, exceptional_point, exceptional_relation, format_scalar,
    HalfExponent, make_param_point, ONE, ParamPoint, Parity, qnum, qpow,
    specialize, SymbolicPoint, THETA, W1, W2
)

from .conftest import BOUND

exponents = st.builds(
    HalfExponent,
    st.integers(-6, 6), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3)
)


def test_half_exponent_stores_doubled_entries():
    x = HalfExponent.of(Fraction(1, 2), w1=1, theta=-1)
    assert x.entries == (1, 2, 0, -2)
    assert (x + x).entries == (2, 4, 0, -4)
    assert (x*2).halved() == x
    assert str(W1 - ONE) == "-1+w1"


@pytest.mark.parametrize(
    "x,text",
    [
        (HalfExponent(1, 0, 0, 0), "1/2"),
        (HalfExponent(-3, 4, 0, 0), "-3/2+2*w1"),
        (HalfExponent(0, 0, -1, 2), "-1/2*w2+th"),
        (HalfExponent(2, -2, 6, 0), "1-w1+3*w2"),
        (HalfExponent(), "0")
    ],
    ids=["half", "negative constant", "half w2", "integers", "zero"]
)
def test_half_exponent_text(x, text):
    assert str(x) == text


def test_halving_an_odd_entry_fails():
    with pytest.raises(ValueError):
        HalfExponent(1, 0, 0, 0).halved()
    with pytest.raises(ValueError):
        HalfExponent.of(Fraction(1, 3))


def test_small_q_numbers(point):
    assert qnum(HalfExponent.of(0), point) == 0
    assert qnum(ONE, point) == 1
    q = qpow(ONE, point)
    assert qnum(HalfExponent.of(2), point) == q + 1/q


@settings(max_examples=50, deadline=None)
@given(x=exponents)
def test_q_number_is_odd(x):
    point = make_param_point(1, BOUND)
    assert qnum(-x, point) == -qnum(x, point)


@settings(max_examples=50, deadline=None)
@given(x=exponents)
def test_q_number_recurrence(x):
    point = make_param_point(1, BOUND)
    two = qnum(HalfExponent.of(2), point)
    assert two*qnum(x, point) == qnum(x + ONE, point) + qnum(x - ONE, point)


@settings(max_examples=30, deadline=None)
@given(
    a=st.fractions(min_value=Fraction(1, 50), max_value=50),
    b=st.fractions(min_value=Fraction(1, 50), max_value=50)
)
def test_fraction_field_axioms(a, b):
    assert (a + b)*(a - b) == a*a - b*b
    assert a*b/b == a


def test_seeded_points_are_deterministic():
    assert make_param_point(7, BOUND) == make_param_point(7, BOUND)
    assert make_param_point(7, BOUND) != make_param_point(8, BOUND)


def test_seeded_point_passes_the_scan(seeded_point):
    seeded_point.check_generic()


def test_scan_rejects_a_vanishing_q_number():
    # s = a means q^(w1 - 1) = 1
    point = ParamPoint(Fraction(2), Fraction(2), Fraction(3), Fraction(5), BOUND)
    with pytest.raises(GenericityError):
        point.check_generic()


def test_point_json_round_trip(point):
    assert ParamPoint.from_json(point.to_json()) == point


def test_derived_parameters(point):
    params = derive_params(point, Parity.EVEN)
    assert params.delta == qnum(HalfExponent.of(2), point)
    assert params.s1 == qnum(W1, point)/qnum(W1 + ONE, point)
    assert params.s2 == qnum(W2, point)/qnum(W2 + ONE, point)
    assert params.b == params.b_even
    assert derive_params(point, Parity.ODD).b == params.b_odd


def test_b_is_even_in_theta(point):
    flipped = point.replace(t=1/point.t)
    for parity in Parity:
        assert derive_params(point, parity).b == derive_params(flipped, parity).b


@pytest.mark.parametrize(
    "sign,k,eps1,eps2",
    [(1, 1, 1, -1), (-1, 3, -1, 1), (1, 0, 1, 1)],
    ids=["+1+-", "-3-+", "+0++"]
)
def test_exceptional_point_satisfies_its_relation(point, sign, k, eps1, eps2):
    moved = exceptional_point(point, sign, k, eps1, eps2)
    relation = exceptional_relation(sign, k, eps1, eps2)
    assert qpow(relation, moved) == 1
    assert qnum(relation, moved) == 0
    moved.check_generic()
    theta = HalfExponent.of(-k, eps1, eps2)*sign
    assert qpow(THETA, moved) == qpow(theta, moved)


def test_symbolic_backend_specialises_to_numeric(point):
    symbolic = SymbolicPoint()
    x = W1 + W2 + ONE
    value = qnum(x, symbolic) * qpow(THETA, symbolic)
    assert specialize(value, point) == qnum(x, point) * qpow(THETA, point)


def test_format_scalar():
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(Fraction(2)) == "2/1"


@settings(max_examples=25, deadline=None)
@given(x=exponents)
def test_symbolic_q_numbers_specialise(seeded_point, x):
    assert specialize(qnum(x, SymbolicPoint()), seeded_point) == qnum(x, seeded_point)


@pytest.mark.parametrize("parity", list(Parity), ids=lambda parity: parity.name)
def test_symbolic_parameters_specialise(seeded_point, parity):
    symbolic = derive_params(SymbolicPoint(), parity)
    numeric = derive_params(seeded_point, parity)
    for name in ("delta", "s1", "s2", "b"):
        assert specialize(getattr(symbolic, name), seeded_point) == getattr(numeric, name)
