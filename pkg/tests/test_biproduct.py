import pytest

from bialgebroid.calculus.biproduct import (
    SplitForm,
    SplitMultivector,
    extend_algebroid,
    join,
    join_form,
    split,
    split_form,
    tilde_contract,
    tilde_differential,
    tilde_wedge,
    verify_biproduct,
)
from bialgebroid.core.algebroid import bracket_sections, differential, tangent_algebroid
from bialgebroid.core.graded import Form, Multivector, evaluate_multivector, interior_form_on_multivector
from bialgebroid.core.sampling import Sampler
from bialgebroid.core.scalar import BasePatch, Scalar
from bialgebroid.errors import DegreeError


def test_extension_adds_one_frame(plane):
    extended, unit = extend_algebroid(tangent_algebroid(plane))
    assert extended.rank == 3
    assert extended.frame_names == ("Dx", "Dy", "one")
    assert unit.value == Form.basis(plane, 3, (2,))
    assert all(value.is_zero() for value in extended.anchor[2])


def test_join_puts_the_unit_first(plane):
    X = Multivector.basis(plane, 2, (0,))
    joined = join(SplitMultivector(Multivector.zero(plane, 2, 2), X))
    # e_∞ ∧ e_1 = -e_1 ∧ e_∞
    assert joined == -Multivector.basis(plane, 3, (0, 2))


def test_split_inverts_join(space, config):
    s = Sampler(config, "split", space, 3)
    for degree in range(1, 4):
        t = SplitMultivector(s.multivector(degree), s.multivector(degree - 1))
        assert split(join(t)) == t
        f = SplitForm(s.form(degree), s.form(degree - 1))
        assert split_form(join_form(f)) == f


def test_degree_zero_needs_no_tail(plane):
    t = SplitMultivector(Multivector.scalar(plane, 2, 1))
    assert join(t).degree == 0
    with pytest.raises(DegreeError):
        SplitMultivector(Multivector.basis(plane, 2, (0,)))
    with pytest.raises(DegreeError):
        SplitMultivector(Multivector.basis(plane, 2, (0,)), Multivector.basis(plane, 2, (1,)))


def test_operations_agree_with_the_extended_frame(space, config):
    T = tangent_algebroid(space)
    extended, _ = extend_algebroid(T)
    s = Sampler(config, "tilde", space, 3)
    for _ in range(config.trials):
        t = SplitMultivector(s.multivector(2), s.multivector(1))
        u = SplitMultivector(s.multivector(1), s.multivector(0))
        f = SplitForm(s.form(1), s.form(0))
        assert join(tilde_wedge(t, u)) == join(t).wedge(join(u))
        assert join(tilde_contract(f, t)) == interior_form_on_multivector(join_form(f), join(t))
        assert join_form(tilde_differential(T, f)) == differential(extended, join_form(f))


def test_verify_biproduct(plane, config):
    report = verify_biproduct(tangent_algebroid(plane), config)
    assert report.passed, report.render_text()
    assert {"biproduct.contract", "biproduct.wedge", "biproduct.differential"} <= {c.name for c in report.checks}


def test_verify_biproduct_on_a_lie_algebra(affine_algebra, config):
    assert verify_biproduct(affine_algebra, config).passed


def test_extended_bracket_on_the_line():
    line = BasePatch.of("x")
    extended, unit = extend_algebroid(tangent_algebroid(line))
    x = Scalar.coordinate(line, "x")
    d_x = extended.frame(0)
    x_one = x * extended.frame(1)
    # [(Dx, 0), (0, x)] = (0, Dx(x)) = (0, 1)
    assert bracket_sections(extended, d_x, x_one) == extended.frame(1)
    assert bracket_sections(extended, x_one, d_x) == -extended.frame(1)
    assert bracket_sections(extended, x_one, x_one).is_zero()
    assert unit.value == Form.basis(line, 2, (1,))


@pytest.mark.parametrize("degree", [1, 2, 3])
def test_join_matches_the_evaluation_formula(space, config, degree):
    # (P,Q)((a_1,f_1), ..., (a_r,f_r)) = P(a_1, ..., a_r) + sum_i (-1)^(i+1) f_i Q(..., no a_i, ...)
    s = Sampler(config, f"biproduct.evaluation.{degree}", space, 3)
    for _ in range(config.trials):
        t = SplitMultivector(s.multivector(degree), s.multivector(degree - 1))
        covectors = [s.covector() for _ in range(degree)]
        values = [s.scalar() for _ in range(degree)]
        expected = evaluate_multivector(t.P, covectors)
        for i, f in enumerate(values):
            term = f * evaluate_multivector(t.Q, covectors[:i] + covectors[i + 1 :])
            expected = expected + term if i % 2 == 0 else expected - term
        joined = [join_form(SplitForm(a, Form.scalar(space, 3, f))) for a, f in zip(covectors, values)]
        assert evaluate_multivector(join(t), joined) == expected
