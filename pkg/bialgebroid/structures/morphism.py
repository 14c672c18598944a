"""Morphisms of generalized Lie bialgebroids over the identity of the base."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

from bialgebroid.core.algebroid import anchor_vector, bracket_sections
from bialgebroid.core.graded import Form, Multivector, flip
from bialgebroid.core.reports import CheckReport
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.core.scalar import Number, Scalar, scalar_sum
from bialgebroid.errors import StructureMismatchError
from bialgebroid.structures.pair import GenBialgebroidPair, induced_bracket, induced_jacobi, one_jet_pair

logger = logging.getLogger(__name__)

__all__ = [
    "PairMorphism",
    "canonical_morphism",
    "identity_morphism",
    "is_morphism",
]


@dataclass(frozen=True, eq=False)
class PairMorphism:
    """Φ: A → B given by `matrix[b][a]`, so that Φ(e_a) = Σ_b matrix[b][a] f_b."""

    source: GenBialgebroidPair
    target: GenBialgebroidPair
    matrix: tuple[tuple[Scalar, ...], ...]

    @classmethod
    def create(
        cls,
        source: GenBialgebroidPair,
        target: GenBialgebroidPair,
        matrix: Sequence[Sequence[Union[Scalar, Number]]],
    ) -> "PairMorphism":
        if source.base != target.base:
            raise StructureMismatchError("morphisms are only supported over the identity of the base")
        if len(matrix) != target.rank or any(len(row) != source.rank for row in matrix):
            raise StructureMismatchError(
                f"morphism matrix must be {target.rank}x{source.rank} (target rank x source rank)"
            )
        base = source.base
        rows = tuple(
            tuple(v if isinstance(v, Scalar) else Scalar.constant(base, v) for v in row) for row in matrix
        )
        return cls(source=source, target=target, matrix=rows)

    def apply(self, X: Multivector) -> Multivector:
        """Φ(X) for a section of the source."""
        self.source.A.check_element(X)
        if X.degree != 1:
            raise StructureMismatchError("Φ acts on sections")
        base, values = self.source.base, X.components()
        return Multivector.from_list(
            base,
            self.target.rank,
            [scalar_sum(base, (row[a] * values[a] for a in range(self.source.rank))) for row in self.matrix],
        )

    def pullback(self, beta: Form) -> Form:
        """Φ*(β) for a section of B*, given as a 1-form of the target."""
        self.target.A.check_element(beta)
        if beta.degree != 1:
            raise StructureMismatchError("Φ* acts on 1-forms")
        base, values = self.source.base, beta.components()
        return Form.from_list(
            base,
            self.source.rank,
            [
                scalar_sum(base, (self.matrix[b][a] * values[b] for b in range(self.target.rank)))
                for a in range(self.source.rank)
            ],
        )


def identity_morphism(p: GenBialgebroidPair) -> PairMorphism:
    return PairMorphism.create(p, p, [[1 if a == b else 0 for a in range(p.rank)] for b in range(p.rank)])


def canonical_morphism(
    p: GenBialgebroidPair, config: Optional[SampleConfig] = None
) -> PairMorphism:
    """Φ_A(X) = (ρ(X), φ0(X)) into the 1-jet pair of the induced Jacobi structure."""
    target = one_jet_pair(induced_jacobi(p), config)
    n = p.base.dim
    phi_values = p.phi0.value.components()
    matrix = [[p.A.anchor[a][j] for a in range(p.rank)] for j in range(n)]
    matrix.append(list(phi_values))
    return PairMorphism.create(p, target, matrix)


def _vector(base, values: list[Scalar]) -> Multivector:
    return Multivector.from_list(base, base.dim, values)


def is_morphism(m: PairMorphism, config: Optional[SampleConfig] = None) -> CheckReport:
    """Φ and Φ* are algebroid maps, the cocycles correspond and the induced brackets agree."""
    config = config or SampleConfig()
    report = CheckReport()
    src, dst = m.source, m.target
    base = src.base

    def anchor_frames() -> Iterator:
        for a in range(src.rank):
            X = src.A.frame(a)
            residual = _vector(base, anchor_vector(dst.A, m.apply(X))) - _vector(base, anchor_vector(src.A, X))
            yield {"X": X}, residual

    report.record("morphism.anchor", "ρ_B∘Φ = ρ_A", anchor_frames())

    def bracket_residual(X: Multivector, Y: Multivector) -> Multivector:
        return m.apply(bracket_sections(src.A, X, Y)) - bracket_sections(dst.A, m.apply(X), m.apply(Y))

    def bracket_frames() -> Iterator:
        for a, c in itertools.combinations(range(src.rank), 2):
            X, Y = src.A.frame(a), src.A.frame(c)
            yield {"X": X, "Y": Y}, bracket_residual(X, Y)

    report.record("morphism.bracket.frames", "Φ[X,Y] = [ΦX, ΦY]", bracket_frames())

    def bracket_sampled() -> Iterator:
        s = Sampler(config, "morphism.bracket.sampled", base, src.rank)
        for _ in range(config.trials):
            X, Y = s.section(), s.section()
            yield {"X": X, "Y": Y}, bracket_residual(X, Y)

    report.record("morphism.bracket.sampled", "Φ[X,Y] = [ΦX, ΦY]", bracket_sampled())

    def dual_anchor_frames() -> Iterator:
        for b in range(dst.rank):
            beta = dst.A.coframe(b)
            residual = _vector(base, anchor_vector(src.Adual, flip(m.pullback(beta)))) - _vector(
                base, anchor_vector(dst.Adual, flip(beta))
            )
            yield {"beta": beta}, residual

    report.record("morphism.dual_anchor", "ρ_{A*}∘Φ* = ρ_{B*}", dual_anchor_frames())

    def dual_bracket_residual(beta: Form, gamma: Form) -> Form:
        lhs = m.pullback(flip(bracket_sections(dst.Adual, flip(beta), flip(gamma))))
        rhs = flip(bracket_sections(src.Adual, flip(m.pullback(beta)), flip(m.pullback(gamma))))
        return lhs - rhs

    def dual_bracket_frames() -> Iterator:
        for b, c in itertools.combinations(range(dst.rank), 2):
            beta, gamma = dst.A.coframe(b), dst.A.coframe(c)
            yield {"beta": beta, "gamma": gamma}, dual_bracket_residual(beta, gamma)

    report.record("morphism.dual_bracket.frames", "Φ*[β,γ]_* = [Φ*β, Φ*γ]_*", dual_bracket_frames())

    def dual_bracket_sampled() -> Iterator:
        s = Sampler(config, "morphism.dual_bracket.sampled", base, dst.rank)
        for _ in range(config.trials):
            beta, gamma = s.covector(), s.covector()
            yield {"beta": beta, "gamma": gamma}, dual_bracket_residual(beta, gamma)

    report.record("morphism.dual_bracket.sampled", "Φ*[β,γ]_* = [Φ*β, Φ*γ]_*", dual_bracket_sampled())

    report.record(
        "morphism.x0",
        "Φ(X0) = Y0",
        [({"X0": src.x0, "Y0": dst.x0}, m.apply(src.x0) - dst.x0)],
    )
    report.record(
        "morphism.phi0",
        "Φ*(ψ0) = φ0",
        [({"psi0": dst.phi0.value, "phi0": src.phi0.value}, m.pullback(dst.phi0.value) - src.phi0.value)],
    )

    def brackets_agree() -> Iterator:
        probes = [Scalar.one(base)] + [Scalar.coordinate(base, j) for j in range(base.dim)]
        for f, g in itertools.product(probes, repeat=2):
            yield {"f": f, "g": g}, induced_bracket(src, f, g) - induced_bracket(dst, f, g)
        s = Sampler(config, "morphism.induced_bracket", base)
        for _ in range(config.trials):
            f, g = s.scalar(), s.scalar()
            yield {"f": f, "g": g}, induced_bracket(src, f, g) - induced_bracket(dst, f, g)

    report.record("morphism.induced_bracket", "{f,g}_A = {f,g}_B", brackets_agree())

    logger.debug(
        "[morphism.is_morphism] checks=%d failed=%d", len(report.checks), len(report.failures())
    )
    return report
