import pytest

from bialgebroid.core.scalar import Scalar
from bialgebroid.errors import StructureMismatchError
from bialgebroid.structures.morphism import (
    PairMorphism,
    canonical_morphism,
    identity_morphism,
    is_morphism,
)


def test_canonical_morphism_of_a_jet_pair_is_the_identity(contact_pair, config):
    m = canonical_morphism(contact_pair, config)
    assert [[v.render() for v in row] for row in m.matrix] == [
        ["1", "0", "0", "0"],
        ["0", "1", "0", "0"],
        ["0", "0", "1", "0"],
        ["0", "0", "0", "1"],
    ]
    report = is_morphism(m, config)
    assert report.passed, report.render_text()


def test_canonical_morphism_of_the_poisson_plane(poisson_pair, config):
    m = canonical_morphism(poisson_pair, config)
    assert m.target.rank == 3
    assert all(v.is_zero() for v in m.matrix[2])
    report = is_morphism(m, config)
    assert report.passed, report.render_text()


def test_identity_morphism(poisson_pair, config):
    assert is_morphism(identity_morphism(poisson_pair), config).passed


def test_perturbed_matrix_is_refused(contact_pair, space, config):
    x = Scalar.coordinate(space, "x")
    matrix = [[1 if a == b else 0 for a in range(4)] for b in range(4)]
    matrix[0][0] = x
    report = is_morphism(PairMorphism.create(contact_pair, contact_pair, matrix), config)
    assert not report.passed
    failed = report.get("morphism.anchor")
    assert failed.status == "fail"
    assert failed.counterexample.inputs == {"X": "e[1]"}


def test_apply_and_pullback(contact_pair, space):
    y = Scalar.coordinate(space, "y")
    m = PairMorphism.create(contact_pair, contact_pair, [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, y], [0, 0, 0, 1]])
    A = contact_pair.A
    assert m.apply(A.frame(3)) == A.frame(3) + A.frame(2) * y
    assert m.pullback(A.coframe(2)) == A.coframe(2) + A.coframe(3) * y


def test_matrix_shape_must_match_ranks(contact_pair, poisson_pair):
    with pytest.raises(StructureMismatchError):
        PairMorphism.create(contact_pair, contact_pair, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    with pytest.raises(StructureMismatchError):
        PairMorphism.create(poisson_pair, contact_pair, [[1, 0], [0, 1]])
