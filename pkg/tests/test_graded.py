import pytest

from bialgebroid.core.graded import (
    Form,
    Multivector,
    evaluate_form,
    evaluate_multivector,
    flip,
    interior_form_on_multivector,
    interior_vector_on_form,
    pair,
    sharp,
)
from bialgebroid.core.sampling import Sampler
from bialgebroid.core.scalar import Scalar
from bialgebroid.errors import DegreeError, IndexRangeError, StructureMismatchError


def test_basis_sorts_with_sign(space):
    assert Multivector.basis(space, 3, (1, 0)) == -Multivector.basis(space, 3, (0, 1))
    assert Multivector.basis(space, 3, (2, 2)).is_zero()
    with pytest.raises(IndexRangeError):
        Multivector.basis(space, 3, (3,))


def test_render(space):
    x, y = Scalar.coordinate(space, "x"), Scalar.coordinate(space, "y")
    assert Multivector.basis(space, 3, (0, 1)).render() == "e[1,2]"
    assert Multivector.basis(space, 3, (0,), x + y).render() == "(x + y) * e[1]"
    assert Form.basis(space, 3, (1, 2), -1).render() == "-E[2,3]"
    assert Multivector(space, 3, 2, {(0, 1): 1, (1, 2): -y}).render() == "e[1,2] - y * e[2,3]"
    assert Multivector(space, 3, 1, {(0,): -1, (1,): -1, (2,): 2}).render() == "-e[1] - e[2] + 2 * e[3]"
    assert Form(space, 3, 1, {(0,): x, (2,): -x * y}).render() == "x * E[1] - x*y * E[3]"


def test_wedge_of_sections_is_antisymmetric(space, config):
    s = Sampler(config, "wedge", space, 3)
    for _ in range(config.trials):
        u, v = s.section(), s.section()
        assert u.wedge(v) == -(v.wedge(u))
        assert u.wedge(u).is_zero()


def test_kinds_and_degrees_do_not_mix(space):
    X = Multivector.basis(space, 3, (0,))
    alpha = Form.basis(space, 3, (0,))
    with pytest.raises(StructureMismatchError):
        X + alpha
    with pytest.raises(DegreeError):
        X + X.wedge(Multivector.basis(space, 3, (1,)))
    with pytest.raises(DegreeError):
        pair(alpha, X.wedge(Multivector.basis(space, 3, (1,))))


def test_pairing_of_dual_bases(space):
    one = Scalar.one(space)
    assert pair(Form.basis(space, 3, (0, 2)), Multivector.basis(space, 3, (0, 2))) == one
    assert pair(Form.basis(space, 3, (0, 1)), Multivector.basis(space, 3, (0, 2))).is_zero()


def test_sharp_of_the_symplectic_plane(plane):
    P = Multivector.basis(plane, 2, (0, 1))
    dx, dy = Form.basis(plane, 2, (0,)), Form.basis(plane, 2, (1,))
    assert sharp(P, dx) == Multivector.basis(plane, 2, (1,))
    assert sharp(P, dy) == -Multivector.basis(plane, 2, (0,))
    assert evaluate_multivector(P, [dx, dy]) == Scalar.one(plane)


def test_interior_products_are_adjoint_to_wedge(space, config):
    s = Sampler(config, "interior", space, 3)
    for _ in range(config.trials):
        phi, beta = s.covector(), s.covector()
        P = s.multivector(2)
        assert pair(beta, interior_form_on_multivector(phi, P)) == pair(phi.wedge(beta), P)
        X, Q = s.section(), s.section()
        alpha = s.form(2)
        assert pair(interior_vector_on_form(X, alpha), Q) == pair(alpha, X.wedge(Q))


def test_evaluate_form_is_a_determinant(plane):
    x = Scalar.coordinate(plane, "x")
    alpha = Form.basis(plane, 2, (0, 1))
    X = Multivector.from_list(plane, 2, [1, x])
    Y = Multivector.from_list(plane, 2, [2, 3])
    assert evaluate_form(alpha, [X, Y]) == 3 - 2 * x
    with pytest.raises(DegreeError):
        evaluate_form(alpha, [X])


def test_flip_is_an_involution(space, config):
    P = Sampler(config, "flip", space, 3).multivector(2)
    assert isinstance(flip(P), Form)
    assert flip(flip(P)) == P
