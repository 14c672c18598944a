"""Triangular generalized Lie bialgebroids built from a bivector P with [P,P]^φ0 = 0.

The dual bracket is
    [α, β]_* = L^φ0_{P♯α}β - L^φ0_{P♯β}α - d^φ0(P(α, β)),
with anchor ρ_* = ρ∘P♯ and cocycle X0 = -P♯(φ0).
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from bialgebroid.calculus.biproduct import SplitMultivector, extend_algebroid, join
from bialgebroid.calculus.deformed import (
    Cocycle,
    deformed_differential,
    deformed_lie_derivative_form,
    deformed_schouten,
)
from bialgebroid.core.algebroid import Algebroid, anchor_vector, bracket_sections, tangent_algebroid
from bialgebroid.core.graded import Form, Multivector, evaluate_multivector, flip, pair, sharp
from bialgebroid.core.reports import CheckReport
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.core.scalar import Scalar
from bialgebroid.errors import DegreeError, ValidationError
from bialgebroid.structures.jacobi import JacobiStructure
from bialgebroid.structures.pair import (
    GenBialgebroidPair,
    check_compatibility,
    new_pair,
    verify_duality_lemmas,
)

logger = logging.getLogger(__name__)

__all__ = [
    "TriangularDatum",
    "check_maurer_cartan",
    "sharp",
    "dual_bracket",
    "build_dual",
    "verify_triangular",
    "jacobi_datum",
]


def check_maurer_cartan(A: Algebroid, phi0: Cocycle, P: Multivector) -> CheckReport:
    if not isinstance(P, Multivector) or P.degree != 2:
        raise DegreeError("the Maurer-Cartan element must be a bivector")
    A.check_element(P)
    report = CheckReport()
    report.record("triangular.maurer_cartan", "[P,P]^{φ0} = 0", [({"P": P}, deformed_schouten(A, phi0, P, P))])
    return report


@dataclass(frozen=True, eq=False)
class TriangularDatum:
    A: Algebroid
    phi0: Cocycle
    P: Multivector

    @classmethod
    def create(cls, A: Algebroid, phi0: Cocycle, P: Multivector) -> "TriangularDatum":
        report = check_maurer_cartan(A, phi0, P)
        if not report.passed:
            raise ValidationError(f"{P.render()} does not satisfy [P,P]^φ0 = 0", report)
        return cls(A=A, phi0=phi0, P=P)

    @property
    def x0(self) -> Multivector:
        return -sharp(self.P, self.phi0.value)


def dual_bracket(t: TriangularDatum, alpha: Form, beta: Form) -> Form:
    """The bracket formula on arbitrary 1-forms of A."""
    A, phi0, P = t.A, t.phi0, t.P
    return (
        deformed_lie_derivative_form(A, phi0, sharp(P, alpha), beta)
        - deformed_lie_derivative_form(A, phi0, sharp(P, beta), alpha)
        - deformed_differential(A, phi0, evaluate_multivector(P, [alpha, beta]))
    )


def _dual_names(A: Algebroid) -> list[str]:
    return [f"{name}_dual" for name in A.frame_names]


def build_dual(t: TriangularDatum, config: Optional[SampleConfig] = None) -> GenBialgebroidPair:
    A = t.A
    coframes = [A.coframe(a) for a in range(A.rank)]
    anchor = [anchor_vector(A, sharp(t.P, alpha)) for alpha in coframes]
    structure = {
        (a, b): flip(dual_bracket(t, coframes[a], coframes[b]))
        for a, b in itertools.combinations(range(A.rank), 2)
    }
    Adual = Algebroid.create(A.base, _dual_names(A), anchor, structure)
    logger.debug("[triangular.build_dual] P=%s X0=%s", t.P.render(), t.x0.render())
    return new_pair(A, t.phi0, Adual, t.x0, config)


def verify_triangular(t: TriangularDatum, config: Optional[SampleConfig] = None) -> CheckReport:
    config = config or SampleConfig()
    p = build_dual(t, config)
    A, base, P = t.A, t.A.base, t.P
    report = CheckReport()
    frames = [A.frame(a) for a in range(A.rank)]
    coframes = [A.coframe(a) for a in range(A.rank)]

    def sampler(label: str) -> Sampler:
        return Sampler(config, label, base, A.rank)

    def d_star_residual(X) -> Multivector:
        return p.d_star(X) - deformed_schouten(A, t.phi0, P, X)

    def d_star_cases() -> Iterator:
        for f in [Scalar.one(base)] + [Scalar.coordinate(base, j) for j in range(base.dim)]:
            yield {"f": f}, d_star_residual(f)
        for X in frames:
            yield {"X": X}, d_star_residual(X)
        s = sampler("triangular.d_star")
        for _ in range(config.trials):
            X = s.section()
            yield {"X": X}, d_star_residual(X)

    report.record("triangular.d_star", "d_*^{X0}X = [P, X]^{φ0}", d_star_cases())

    def transpose_sharp() -> Iterator:
        values = [pair(t.phi0.value, sharp(P, beta)) for beta in coframes]
        yield {"phi0": t.phi0.value}, Multivector.from_list(base, A.rank, values) - p.x0

    report.record("triangular.x0", "(P♯)*(φ0) = X0", transpose_sharp())

    def anchor_cases() -> Iterator:
        for alpha in coframes:
            lhs = anchor_vector(p.Adual, flip(alpha))
            rhs = anchor_vector(A, sharp(P, alpha))
            yield {"alpha": alpha}, Multivector.from_list(base, base.dim, [l - r for l, r in zip(lhs, rhs)])

    report.record("triangular.anchor", "ρ_* = ρ∘P♯", anchor_cases())

    def sharp_bracket(alpha: Form, beta: Form) -> Multivector:
        lhs = sharp(P, flip(bracket_sections(p.Adual, flip(alpha), flip(beta))))
        return lhs - bracket_sections(A, sharp(P, alpha), sharp(P, beta))

    def sharp_cases() -> Iterator:
        for a, b in itertools.combinations(range(A.rank), 2):
            yield {"alpha": coframes[a], "beta": coframes[b]}, sharp_bracket(coframes[a], coframes[b])
        s = sampler("triangular.sharp_bracket")
        for _ in range(config.trials):
            alpha, beta = s.covector(), s.covector()
            yield {"alpha": alpha, "beta": beta}, sharp_bracket(alpha, beta)

    report.record("triangular.sharp_bracket", "P♯([α,β]_*) = [P♯α, P♯β]", sharp_cases())

    def formula_cases() -> Iterator:
        s = sampler("triangular.dual_bracket")
        for _ in range(config.trials):
            alpha, beta = s.covector(), s.covector()
            stored = flip(bracket_sections(p.Adual, flip(alpha), flip(beta)))
            yield {"alpha": alpha, "beta": beta}, stored - dual_bracket(t, alpha, beta)

    report.record(
        "triangular.dual_bracket",
        "[α,β]_* = L^{φ0}_{P♯α}β - L^{φ0}_{P♯β}α - d^{φ0}(P(α,β))",
        formula_cases(),
    )

    report.extend(check_compatibility(p, config))
    report.extend(verify_duality_lemmas(p, config))
    logger.debug(
        "[triangular.verify_triangular] checks=%d failed=%d", len(report.checks), len(report.failures())
    )
    return report


def jacobi_datum(J: JacobiStructure) -> TriangularDatum:
    """(TM×ℝ, (0,1)) with P = (Λ, E) = Λ + e_∞∧E; valid iff (Λ, E) is Jacobi."""
    extended, unit = extend_algebroid(tangent_algebroid(J.base))
    P = join(SplitMultivector(J.Lambda, J.E))
    return TriangularDatum.create(extended, unit, P)
