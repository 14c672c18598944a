"""Cartan calculus twisted by a 1-cocycle φ.

ρ^φ(X)f = ρ(X)f + φ(X)f, d^φ = d + φ∧·, L^φ by the magic formula on forms,
and the φ-deformed Schouten bracket on multivectors.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from bialgebroid.core.algebroid import (
    Algebroid,
    anchor_apply,
    as_form,
    as_multivector,
    bracket_sections,
    differential,
    schouten,
)
from bialgebroid.core.graded import (
    Form,
    Multivector,
    interior_form_on_multivector,
    interior_vector_on_form,
    pair,
)
from bialgebroid.core.reports import CheckReport
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.core.scalar import Scalar
from bialgebroid.errors import DegreeError, StructureMismatchError, ValidationError

logger = logging.getLogger(__name__)

__all__ = [
    "Cocycle",
    "is_cocycle",
    "deformed_anchor_apply",
    "twisted_differential",
    "deformed_differential",
    "deformed_lie_derivative_form",
    "deformed_schouten",
    "deformed_lie_derivative_multivector",
    "verify_deformed_properties",
]


def is_cocycle(A: Algebroid, phi: Form, config: Optional[SampleConfig] = None) -> CheckReport:
    """dφ = 0, plus the bracket form φ([X,Y]) = ρ(X)φ(Y) - ρ(Y)φ(X) on frame pairs."""
    if not isinstance(phi, Form) or phi.degree != 1:
        raise DegreeError("a cocycle candidate must be a 1-form")
    A.check_element(phi)
    report = CheckReport()
    report.record("cocycle.closed", "dφ = 0", [({"phi": phi}, differential(A, phi))])

    def frame_pairs() -> Iterator:
        for i, j in itertools.combinations(range(A.rank), 2):
            X, Y = A.frame(i), A.frame(j)
            residual = pair(phi, bracket_sections(A, X, Y)) - (
                anchor_apply(A, X, pair(phi, Y)) - anchor_apply(A, Y, pair(phi, X))
            )
            yield {"phi": phi, "X": X, "Y": Y}, residual

    report.record("cocycle.frames", "φ([X,Y]) = ρ(X)φ(Y) - ρ(Y)φ(X)", frame_pairs())
    logger.debug("[deformed.is_cocycle] %s -> %s", phi.render(), "pass" if report.passed else "fail")
    return report


@dataclass(frozen=True, eq=False)
class Cocycle:
    """A 1-form of `owner` known to be closed."""

    owner: Algebroid
    value: Form

    @classmethod
    def create(cls, A: Algebroid, phi: Form, config: Optional[SampleConfig] = None) -> "Cocycle":
        report = is_cocycle(A, phi, config)
        if not report.passed:
            raise ValidationError(f"{phi.render()} is not a 1-cocycle", report)
        return cls(owner=A, value=phi)

    @classmethod
    def zero(cls, A: Algebroid) -> "Cocycle":
        return cls(owner=A, value=Form.zero(A.base, A.rank, 1))


def _check_owner(A: Algebroid, phi: Cocycle) -> None:
    if not isinstance(phi, Cocycle):
        raise StructureMismatchError("deformed operations take a Cocycle, not a raw form")
    if phi.owner is not A and not phi.owner.structurally_equal(A):
        raise StructureMismatchError("cocycle belongs to a different algebroid")


def deformed_anchor_apply(A: Algebroid, phi: Cocycle, X: Multivector, f: Scalar) -> Scalar:
    _check_owner(A, phi)
    return anchor_apply(A, X, f) + pair(phi.value, X) * f


def twisted_differential(A: Algebroid, phi: Form, alpha: Union[Form, Scalar]) -> Form:
    """dα + φ∧α for an arbitrary 1-form φ (closed or not)."""
    if not isinstance(phi, Form) or phi.degree != 1:
        raise DegreeError("the twisting form must have degree 1")
    A.check_element(phi)
    alpha = as_form(A, alpha)
    return differential(A, alpha) + phi.wedge(alpha)


def deformed_differential(A: Algebroid, phi: Cocycle, alpha: Union[Form, Scalar]) -> Form:
    _check_owner(A, phi)
    return twisted_differential(A, phi.value, alpha)


def deformed_lie_derivative_form(
    A: Algebroid, phi: Cocycle, X: Multivector, alpha: Union[Form, Scalar]
) -> Form:
    """L^φ_X α = d^φ(ι_X α) + ι_X(d^φ α)."""
    _check_owner(A, phi)
    alpha = as_form(A, alpha)
    out = interior_vector_on_form(X, deformed_differential(A, phi, alpha))
    if alpha.degree:
        out = out + deformed_differential(A, phi, interior_vector_on_form(X, alpha))
    return out


def _contract_phi(phi: Form, P: Multivector) -> Optional[Multivector]:
    return interior_form_on_multivector(phi, P) if P.degree else None


def deformed_schouten(
    A: Algebroid, phi: Cocycle, P: Union[Multivector, Scalar], Q: Union[Multivector, Scalar]
) -> Multivector:
    """[P,Q]^φ = [P,Q] + (r-1) P∧ι_φQ - (-1)^(r-1) (r'-1) (ι_φP)∧Q."""
    _check_owner(A, phi)
    P = as_multivector(A, P)
    Q = as_multivector(A, Q)
    r, s = P.degree, Q.degree
    out = schouten(A, P, Q)
    if r == 0 and s == 0:
        return out
    contracted_q = _contract_phi(phi.value, Q)
    if contracted_q is not None and r != 1:
        out = out + P.wedge(contracted_q) * (r - 1)
    contracted_p = _contract_phi(phi.value, P)
    if contracted_p is not None and s != 1:
        sign = 1 if (r - 1) % 2 == 0 else -1
        out = out - contracted_p.wedge(Q) * (sign * (s - 1))
    return out


def deformed_lie_derivative_multivector(
    A: Algebroid, phi: Cocycle, X: Multivector, P: Union[Multivector, Scalar]
) -> Multivector:
    """L^φ_X P = [X, P]^φ."""
    if not isinstance(X, Multivector) or X.degree != 1:
        raise DegreeError("the Lie derivative direction must be a section")
    return deformed_schouten(A, phi, X, P)


def verify_deformed_properties(
    A: Algebroid, phi: Cocycle, config: Optional[SampleConfig] = None
) -> CheckReport:
    """Product rules of d^φ and L^φ, and the defining properties of [ , ]^φ.

    Every check runs on frame and coframe elements first, then on samples.
    """
    _check_owner(A, phi)
    config = config or SampleConfig()
    report = CheckReport()
    top = min(A.rank, 3)
    phi_form = phi.value

    frames = [A.frame(a) for a in range(A.rank)]
    coframes = [A.coframe(a) for a in range(A.rank)]
    basis_forms = [Form.scalar(A.base, A.rank, 1)] + coframes
    basis_multivectors = [Multivector.scalar(A.base, A.rank, 1)] + frames
    functions = [Scalar.coordinate(A.base, j) for j in range(A.base.dim)] or [Scalar.one(A.base)]

    def sampler(label: str) -> Sampler:
        return Sampler(config, label, A.base, A.rank)

    def cycle(trial: int, limit: int) -> int:
        return trial % (limit + 1)

    def d_phi(alpha):
        return deformed_differential(A, phi, alpha)

    def lie(X, alpha):
        return deformed_lie_derivative_form(A, phi, X, alpha)

    def bracket(P, Q):
        return deformed_schouten(A, phi, P, Q)

    def product_rule_d() -> Iterator:
        s = sampler("deformed.d.product")
        pairs = list(itertools.product(basis_forms, repeat=2))
        for trial in range(config.trials):
            pairs.append((s.form(cycle(trial, top)), s.form(cycle(trial // (top + 1), top))))
        for alpha, beta in pairs:
            lhs = d_phi(alpha.wedge(beta))
            rhs = d_phi(alpha).wedge(beta) - phi_form.wedge(alpha).wedge(beta)
            rhs = rhs + alpha.wedge(d_phi(beta)) * (-1 if alpha.degree % 2 else 1)
            yield {"alpha": alpha, "beta": beta}, lhs - rhs

    report.record(
        "deformed.d_product",
        "d^φ(α∧β) = d^φα∧β + (-1)^|α| α∧d^φβ - φ∧α∧β",
        product_rule_d(),
    )

    def direction_function_form(label: str) -> list:
        s = sampler(label)
        cases = list(itertools.product(frames, functions, basis_forms))
        for trial in range(config.trials):
            cases.append((s.section(), s.scalar(), s.form(cycle(trial, top))))
        return cases

    def function_linearity() -> Iterator:
        for X, f, alpha in direction_function_form("deformed.lie.function"):
            lhs = lie(X, alpha * f)
            rhs = lie(X, alpha) * f + alpha * anchor_apply(A, X, f)
            yield {"X": X, "f": f, "alpha": alpha}, lhs - rhs

    report.record("deformed.lie_f_alpha", "L^φ_X(fα) = f L^φ_X α + ρ(X)f α", function_linearity())

    def direction_linearity() -> Iterator:
        for X, f, alpha in direction_function_form("deformed.lie.direction"):
            lhs = lie(X * f, alpha)
            rhs = lie(X, alpha) * f
            if alpha.degree:
                rhs = rhs + differential(A, f).wedge(interior_vector_on_form(X, alpha))
            yield {"X": X, "f": f, "alpha": alpha}, lhs - rhs

    report.record("deformed.lie_fX", "L^φ_{fX}α = f L^φ_X α + df∧ι_Xα", direction_linearity())

    def lie_product() -> Iterator:
        s = sampler("deformed.lie.product")
        cases = list(itertools.product(frames, basis_forms, basis_forms))
        for trial in range(config.trials):
            cases.append(
                (s.section(), s.form(cycle(trial, top)), s.form(cycle(trial // (top + 1), top)))
            )
        for X, alpha, beta in cases:
            lhs = lie(X, alpha.wedge(beta))
            rhs = lie(X, alpha).wedge(beta) + alpha.wedge(lie(X, beta))
            rhs = rhs - alpha.wedge(beta) * pair(phi_form, X)
            yield {"X": X, "alpha": alpha, "beta": beta}, lhs - rhs

    report.record(
        "deformed.lie_product",
        "L^φ_X(α∧β) = L^φ_Xα∧β + α∧L^φ_Xβ - φ(X)α∧β",
        lie_product(),
    )

    def bracket_function() -> Iterator:
        s = sampler("deformed.bracket.function")
        cases = list(itertools.product(frames, functions))
        cases.extend((s.section(), s.scalar()) for _ in range(config.trials))
        for X, f in cases:
            lhs = bracket(X, f)
            rhs = Multivector.scalar(A.base, A.rank, deformed_anchor_apply(A, phi, X, f))
            yield {"X": X, "f": f}, lhs - rhs

    report.record("deformed.bracket_function", "[X,f]^φ = ρ^φ(X)f", bracket_function())

    def bracket_sections_case() -> Iterator:
        s = sampler("deformed.bracket.sections")
        cases = list(itertools.product(frames, repeat=2))
        cases.extend((s.section(), s.section()) for _ in range(config.trials))
        for X, Y in cases:
            yield {"X": X, "Y": Y}, bracket(X, Y) - bracket_sections(A, X, Y)

    report.record("deformed.bracket_sections", "[X,Y]^φ = [X,Y]", bracket_sections_case())

    def antisymmetry() -> Iterator:
        s = sampler("deformed.bracket.antisymmetry")
        cases = list(itertools.product(basis_multivectors, repeat=2))
        for trial in range(config.trials):
            cases.append((s.multivector(cycle(trial, top)), s.multivector(cycle(trial // (top + 1), top))))
        for P, Q in cases:
            sign = -1 if ((P.degree - 1) * (Q.degree - 1)) % 2 == 0 else 1
            yield {"P": P, "Q": Q}, bracket(P, Q) - bracket(Q, P) * sign

    report.record(
        "deformed.bracket_antisymmetry",
        "[P,P']^φ = -(-1)^((r-1)(r'-1)) [P',P]^φ",
        antisymmetry(),
    )

    def bracket_leibniz() -> Iterator:
        s = sampler("deformed.bracket.leibniz")
        cases = list(itertools.product(frames, basis_multivectors, frames))
        for trial in range(config.trials):
            r = 1 + cycle(trial, max(top - 1, 0))
            q = cycle(trial // (top + 1), max(top - 1, 0))
            cases.append((s.multivector(r), s.multivector(q), s.multivector(1)))
        for P, Q, R in cases:
            r, q = P.degree, Q.degree
            lhs = bracket(P, Q.wedge(R))
            rhs = bracket(P, Q).wedge(R) + Q.wedge(bracket(P, R)) * (-1 if ((r - 1) * q) % 2 else 1)
            # ι_φP term with sign (-1)^(r-1)
            tail = interior_form_on_multivector(phi_form, P).wedge(Q).wedge(R)
            rhs = rhs - tail * (1 if (r - 1) % 2 == 0 else -1)
            yield {"P": P, "Q": Q, "R": R}, lhs - rhs

    report.record(
        "deformed.bracket_leibniz",
        "[P,P'∧P'']^φ = [P,P']^φ∧P'' + (-1)^((r-1)r') P'∧[P,P'']^φ - (-1)^(r-1) (ι_φP)∧P'∧P''",
        bracket_leibniz(),
    )

    def square() -> Iterator:
        s = sampler("deformed.d.square")
        cases = basis_forms + [s.form(cycle(trial, top)) for trial in range(config.trials)]
        for alpha in cases:
            yield {"alpha": alpha}, d_phi(d_phi(alpha))

    report.record("deformed.d_square", "(d^φ)² = 0", square())

    def pairing() -> Iterator:
        s = sampler("deformed.pairing")
        cases = list(itertools.product(frames, frames, coframes))
        cases.extend((s.section(), s.section(), s.covector()) for _ in range(config.trials))
        for X, Y, alpha in cases:
            lhs = deformed_anchor_apply(A, phi, X, pair(alpha, Y))
            rhs = pair(lie(X, alpha), Y) + pair(alpha, deformed_lie_derivative_multivector(A, phi, X, Y))
            yield {"X": X, "Y": Y, "alpha": alpha}, lhs - rhs

    report.record(
        "deformed.pairing",
        "ρ^φ(X)⟨α,Y⟩ = ⟨L^φ_Xα, Y⟩ + ⟨α, L^φ_X Y⟩",
        pairing(),
    )

    logger.debug(
        "[deformed.verify_deformed_properties] checks=%d failed=%d",
        len(report.checks),
        len(report.failures()),
    )
    return report
