from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bialgebroid.core.scalar import BasePatch, Scalar, scalar_sum
from bialgebroid.dsl.loader import to_scalar
from bialgebroid.dsl.parser import parse_expression
from bialgebroid.errors import IndexRangeError, StructureMismatchError

PLANE = BasePatch.of("x", "y")

coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3))
scalars = st.dictionaries(exponents, coefficients, max_size=4).map(lambda terms: Scalar(PLANE, terms))
points = st.tuples(coefficients, coefficients)


def test_render_is_graded_lex_descending():
    p = Scalar(PLANE, {(2, 0): Fraction(1, 2), (0, 1): -1, (0, 0): 3})
    assert p.render() == "1/2*x^2 - y + 3"
    assert Scalar.zero(PLANE).render() == "0"
    assert (-Scalar.coordinate(PLANE, "y")).render() == "-y"


def test_zero_coefficients_are_dropped():
    p = Scalar(PLANE, {(1, 0): 2, (0, 1): 0})
    assert p.term_count() == 1
    assert (p - p).is_zero()


def test_constructor_rejects_wrong_arity():
    with pytest.raises(StructureMismatchError):
        Scalar(PLANE, {(1,): 1})


def test_mixing_patches_is_refused():
    with pytest.raises(StructureMismatchError):
        Scalar.one(PLANE) + Scalar.one(BasePatch.of("u"))


def test_unknown_coordinate():
    with pytest.raises(IndexRangeError):
        Scalar.coordinate(PLANE, "z")


def test_partial_and_evaluate():
    x, y = Scalar.coordinate(PLANE, 0), Scalar.coordinate(PLANE, 1)
    p = x ** 2 * y + 3 * y
    assert p.partial(0) == 2 * x * y
    assert p.partial(1) == x ** 2 + 3
    assert p.evaluate([2, 3]) == 21


def test_scalar_sum():
    x = Scalar.coordinate(PLANE, 0)
    assert scalar_sum(PLANE, [x, x, -x]) == x
    assert scalar_sum(PLANE, []).is_zero()


@given(scalars, scalars, scalars)
def test_ring_laws(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r


@given(scalars, scalars)
def test_partial_is_a_derivation(p, q):
    for index in range(PLANE.dim):
        assert (p * q).partial(index) == p.partial(index) * q + p * q.partial(index)


@given(scalars, scalars, points)
def test_evaluation_is_a_ring_morphism(p, q, point):
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p - q).evaluate(point) == p.evaluate(point) - q.evaluate(point)


@settings(max_examples=50)
@given(scalars)
def test_render_reads_back(p):
    assert to_scalar(parse_expression(p.render()), PLANE) == p
