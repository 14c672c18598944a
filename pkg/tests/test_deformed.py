import pytest

from bialgebroid.calculus.deformed import (
    Cocycle,
    deformed_differential,
    deformed_schouten,
    is_cocycle,
    twisted_differential,
    verify_deformed_properties,
)
from bialgebroid.core.algebroid import differential, schouten, tangent_algebroid
from bialgebroid.core.graded import Form, Multivector
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.core.scalar import Scalar
from bialgebroid.errors import DegreeError, StructureMismatchError, ValidationError
from bialgebroid.structures.jacobi import one_jet_algebroid


def test_closed_form_is_a_cocycle(plane, config):
    T = tangent_algebroid(plane)
    report = is_cocycle(T, Form.basis(plane, 2, (0,)), config)
    assert report.passed


def test_non_closed_form_is_rejected(plane, config):
    T = tangent_algebroid(plane)
    phi = Form.basis(plane, 2, (1,), Scalar.coordinate(plane, "x"))
    report = is_cocycle(T, phi, config)
    assert report.get("cocycle.closed").status == "fail"
    assert report.get("cocycle.closed").counterexample.residual == "E[1,2]"
    with pytest.raises(ValidationError) as excinfo:
        Cocycle.create(T, phi, config)
    assert not excinfo.value.report.passed


def test_cocycle_candidate_must_be_a_one_form(plane):
    T = tangent_algebroid(plane)
    with pytest.raises(DegreeError):
        is_cocycle(T, Form.basis(plane, 2, (0, 1)))


def test_cocycle_of_another_algebroid_is_refused(plane, space):
    phi = Cocycle.zero(tangent_algebroid(space))
    with pytest.raises(StructureMismatchError):
        deformed_differential(tangent_algebroid(plane), phi, Scalar.one(plane))


def test_zero_cocycle_gives_the_plain_calculus(space, config):
    T = tangent_algebroid(space)
    zero = Cocycle.zero(T)
    s = Sampler(config, "zero_cocycle", space, 3)
    for _ in range(config.trials):
        alpha = s.form(1)
        P, Q = s.multivector(2), s.multivector(1)
        assert deformed_differential(T, zero, alpha) == differential(T, alpha)
        assert deformed_schouten(T, zero, P, Q) == schouten(T, P, Q)


def test_deformed_differential_of_one(plane):
    T = tangent_algebroid(plane)
    phi = Cocycle.create(T, Form.basis(plane, 2, (0,)))
    assert deformed_differential(T, phi, Scalar.one(plane)) == phi.value


def test_twisted_square_is_d_phi_wedge(plane, config):
    T = tangent_algebroid(plane)
    phi = Form.basis(plane, 2, (1,), Scalar.coordinate(plane, "x"))
    s = Sampler(config, "twisted", plane, 2)
    for degree in range(2):
        alpha = s.form(degree)
        twice = twisted_differential(T, phi, twisted_differential(T, phi, alpha))
        assert twice == differential(T, phi).wedge(alpha)


def test_deformed_bracket_of_functions_vanishes(plane):
    T = tangent_algebroid(plane)
    phi = Cocycle.create(T, Form.basis(plane, 2, (0,)))
    x, y = Scalar.coordinate(plane, "x"), Scalar.coordinate(plane, "y")
    assert deformed_schouten(T, phi, x, y).is_zero()


def test_properties_on_the_plane(plane, config):
    T = tangent_algebroid(plane)
    phi = Cocycle.create(T, Form.basis(plane, 2, (0,)), config)
    report = verify_deformed_properties(T, phi, config)
    assert report.passed, report.render_text()


def test_properties_on_a_lie_algebra(affine_algebra, config):
    phi = Cocycle.create(affine_algebra, affine_algebra.coframe(0), config)
    report = verify_deformed_properties(affine_algebra, phi, config)
    assert report.passed, report.render_text()


def test_properties_on_the_jet_algebroid(contact, config):
    jet, x0 = one_jet_algebroid(contact)
    phi = Cocycle.create(jet, Form.from_list(contact.base, 4, x0.components()), config)
    report = verify_deformed_properties(jet, phi, config)
    assert report.passed, report.render_text()
    assert {check.name for check in report.checks} >= {"deformed.d_square", "deformed.bracket_leibniz"}


def test_properties_try_frame_elements_before_samples(affine_algebra, monkeypatch):
    phi = Cocycle.create(affine_algebra, affine_algebra.coframe(0))
    # drop the φ terms so [e1, 1]^φ comes out 0 instead of φ(e1) = 1
    monkeypatch.setattr(
        "bialgebroid.calculus.deformed.deformed_schouten", lambda A, phi, P, Q: schouten(A, P, Q)
    )
    report = verify_deformed_properties(affine_algebra, phi, SampleConfig(trials=1))
    failed = report.get("deformed.bracket_function")
    assert failed.status == "fail"
    assert failed.counterexample.inputs["X"] == "e[1]"
    assert failed.counterexample.residual == "-1"


def test_contraction_is_skipped_on_functions(plane):
    T = tangent_algebroid(plane)
    phi = Cocycle.create(T, Form.basis(plane, 2, (0,)))
    X = Multivector.basis(plane, 2, (0,))
    f = Scalar.coordinate(plane, "y")
    assert deformed_schouten(T, phi, X, f).as_scalar() == f
