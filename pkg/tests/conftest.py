from pathlib import Path

import pytest

from bialgebroid.calculus.deformed import Cocycle
from bialgebroid.core.algebroid import lie_algebra, tangent_algebroid
from bialgebroid.core.graded import Multivector
from bialgebroid.core.sampling import SampleConfig
from bialgebroid.core.scalar import BasePatch, Scalar
from bialgebroid.structures.jacobi import JacobiStructure, cotangent_algebroid
from bialgebroid.structures.pair import new_pair, one_jet_pair

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"


@pytest.fixture
def config():
    return SampleConfig(seed=0, max_degree=2, trials=8)


@pytest.fixture
def plane():
    return BasePatch.of("x", "y")


@pytest.fixture
def space():
    return BasePatch.of("x", "y", "z")


@pytest.fixture
def point():
    return BasePatch()


@pytest.fixture
def contact(space):
    """Λ = (∂x + y∂z)∧∂y, E = ∂z."""
    y = Scalar.coordinate(space, "y")
    Lambda = Multivector(space, 3, 2, {(0, 1): 1, (1, 2): -y})
    return JacobiStructure(base=space, Lambda=Lambda, E=Multivector.basis(space, 3, (2,)))


@pytest.fixture
def poisson_pair(plane, config):
    T = tangent_algebroid(plane)
    pi = Multivector.basis(plane, 2, (0, 1))
    return new_pair(T, Cocycle.zero(T), cotangent_algebroid(plane, pi, config), Multivector.zero(plane, 2, 1), config)


@pytest.fixture
def contact_pair(contact, config):
    return one_jet_pair(contact, config)


@pytest.fixture
def affine_algebra():
    """[e1, e2] = e2 over a point."""
    return lie_algebra(2, {(0, 1): [0, 1]})
