import pytest

from bialgebroid.core.algebroid import (
    SCHOUTEN_CACHE_SIZE,
    Algebroid,
    _schouten_term,
    anchor_apply,
    anchor_vector,
    bracket_sections,
    check_axioms,
    differential,
    jacobiator,
    lie_algebra,
    lie_derivative,
    schouten,
    tangent_algebroid,
)
from bialgebroid.core.graded import Form, Multivector
from bialgebroid.core.sampling import Sampler
from bialgebroid.core.scalar import Scalar
from bialgebroid.errors import DegreeError, IndexRangeError, StructureMismatchError


def test_tangent_algebroid_shape(space):
    T = tangent_algebroid(space)
    assert T.rank == 3
    assert T.frame_names == ("Dx", "Dy", "Dz")
    assert not T.structure
    assert anchor_vector(T, T.frame(1)) == [Scalar.zero(space), Scalar.one(space), Scalar.zero(space)]


def test_create_validates_shapes(plane):
    with pytest.raises(StructureMismatchError):
        Algebroid.create(plane, ["a", "b"], [[1, 0]])
    with pytest.raises(StructureMismatchError):
        Algebroid.create(plane, ["a", "a"], [[1, 0], [0, 1]])
    with pytest.raises(StructureMismatchError):
        Algebroid.create(plane, ["a", "b"], [[1, 0], [0, 1]], {(1, 0): [1, 0]})
    with pytest.raises(IndexRangeError):
        Algebroid.create(plane, ["a", "b"], [[1, 0], [0, 1]], {(0, 2): [1, 0]})


def test_structure_bracket_is_antisymmetric(affine_algebra):
    assert affine_algebra.structure_bracket(0, 1) == affine_algebra.frame(1)
    assert affine_algebra.structure_bracket(1, 0) == -affine_algebra.frame(1)
    assert affine_algebra.structure_bracket(1, 1).is_zero()


def test_vector_field_bracket(plane):
    T = tangent_algebroid(plane)
    x = Scalar.coordinate(plane, "x")
    Dx, Dy = T.frame(0), T.frame(1)
    assert bracket_sections(T, Dx, Dy * x) == Dy
    assert bracket_sections(T, Dy * x, Dx) == -Dy
    assert anchor_apply(T, Dy * x, Scalar.coordinate(plane, "y")) == x


def test_differential_of_functions(plane):
    T = tangent_algebroid(plane)
    x, y = Scalar.coordinate(plane, "x"), Scalar.coordinate(plane, "y")
    assert differential(T, x * y) == Form.from_list(plane, 2, [y, x])
    assert differential(T, differential(T, x ** 2 * y)).is_zero()


def test_differential_squares_to_zero(space, config):
    T = tangent_algebroid(space)
    s = Sampler(config, "d_square", space, 3)
    for degree in range(3):
        alpha = s.form(degree)
        assert differential(T, differential(T, alpha)).is_zero()


def test_lie_derivative_cartan_formula_on_functions(plane):
    T = tangent_algebroid(plane)
    x, y = Scalar.coordinate(plane, "x"), Scalar.coordinate(plane, "y")
    X = Multivector.from_list(plane, 2, [y, x])
    assert lie_derivative(T, X, x * y).as_scalar() == y ** 2 + x ** 2


def test_schouten_with_a_function(plane):
    T = tangent_algebroid(plane)
    P = Multivector.basis(plane, 2, (0, 1))
    assert schouten(T, P, Scalar.coordinate(plane, "x")) == -T.frame(1)
    assert schouten(T, P, P).is_zero()


def test_bracket_needs_sections(plane):
    T = tangent_algebroid(plane)
    with pytest.raises(DegreeError):
        bracket_sections(T, Multivector.basis(plane, 2, (0, 1)), T.frame(0))


def test_lie_algebra_passes_axioms(affine_algebra, config):
    report = check_axioms(affine_algebra, config)
    assert report.passed
    assert report.get("algebroid.jacobi.frames").status == "pass"


def test_cotangent_style_algebroid_passes_axioms(plane, config):
    A = Algebroid.create(plane, ["dx", "dy"], [[0, 1], [-1, 0]])
    assert check_axioms(A, config).passed


def test_broken_structure_functions_are_caught(config):
    h = lie_algebra(3, {(0, 1): [0, 0, 1], (0, 2): [1, 0, 0]})
    assert jacobiator(h, h.frame(0), h.frame(1), h.frame(2)) == -h.frame(2)
    report = check_axioms(h, config)
    assert not report.passed
    failed = report.get("algebroid.jacobi.frames")
    assert failed.status == "fail"
    assert failed.counterexample.inputs == {"X": "e[1]", "Y": "e[2]", "Z": "e[3]"}
    assert failed.counterexample.residual == "-e[3]"


def test_anchor_not_a_homomorphism(plane, config):
    x = Scalar.coordinate(plane, "x")
    A = Algebroid.create(plane, ["a", "b"], [[1, 0], [0, x]])
    report = check_axioms(A, config)
    assert report.get("algebroid.anchor.frames").status == "fail"


def test_schouten_cache_is_bounded(space, config):
    T = tangent_algebroid(space)
    s = Sampler(config, "schouten.cache", space, 3)
    for _ in range(config.trials):
        schouten(T, s.multivector(2), s.multivector(2))
    info = _schouten_term.cache_info()
    assert info.maxsize == SCHOUTEN_CACHE_SIZE
    assert 0 < info.currsize <= SCHOUTEN_CACHE_SIZE
