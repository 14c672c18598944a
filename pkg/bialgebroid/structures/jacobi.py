"""Jacobi and Poisson structures on the base, and the algebroids they induce.

Conventions: Λ and E live over the tangent frame ∂/∂x_i; Λ♯α = ι_α Λ so
that ⟨β, Λ♯α⟩ = Λ(α, β). With the Schouten sign used in this package a
pair (Λ, E) is Jacobi iff [Λ,Λ] + 2 E∧Λ = 0 and [E,Λ] = 0.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Optional, Union

from bialgebroid.core.algebroid import (
    Algebroid,
    anchor_apply,
    differential,
    lie_derivative,
    schouten,
    tangent_algebroid,
)
from bialgebroid.core.graded import (
    Form,
    Multivector,
    evaluate_multivector,
    interior_vector_on_form,
    sharp,
)
from bialgebroid.core.reports import CheckReport
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.core.scalar import BasePatch, Scalar
from bialgebroid.errors import DegreeError, StructureMismatchError, ValidationError

logger = logging.getLogger(__name__)

__all__ = [
    "JacobiStructure",
    "jacobi_bracket",
    "check_jacobi_structure",
    "cotangent_algebroid",
    "one_jet_algebroid",
    "one_jet_bracket",
    "jet_section",
    "jet_parts",
]


def _check_tensors(base: BasePatch, Lambda: Multivector, E: Multivector) -> None:
    if not isinstance(Lambda, Multivector) or Lambda.degree != 2:
        raise DegreeError("Λ must be a bivector")
    if not isinstance(E, Multivector) or E.degree != 1:
        raise DegreeError("E must be a vector field")
    for value in (Lambda, E):
        if value.patch != base or value.rank != base.dim:
            raise StructureMismatchError("Λ and E must live over the tangent frame of the base")


@dataclass(frozen=True, eq=False)
class JacobiStructure:
    base: BasePatch
    Lambda: Multivector
    E: Multivector

    @classmethod
    def create(
        cls,
        base: BasePatch,
        Lambda: Multivector,
        E: Optional[Multivector] = None,
        config: Optional[SampleConfig] = None,
    ) -> "JacobiStructure":
        E = E if E is not None else Multivector.zero(base, base.dim, 1)
        report = check_jacobi_structure(base, Lambda, E, config)
        if not report.passed:
            raise ValidationError("(Λ, E) is not a Jacobi structure", report)
        return cls(base=base, Lambda=Lambda, E=E)

    @cached_property
    def tangent(self) -> Algebroid:
        return tangent_algebroid(self.base)

    @property
    def is_poisson(self) -> bool:
        return self.E.is_zero()

    def same_as(self, other: "JacobiStructure") -> bool:
        return self.base == other.base and self.Lambda == other.Lambda and self.E == other.E

    def negated(self) -> "JacobiStructure":
        return JacobiStructure(base=self.base, Lambda=-self.Lambda, E=-self.E)


def _bracket(T: Algebroid, Lambda: Multivector, E: Multivector, f: Scalar, g: Scalar) -> Scalar:
    df, dg = differential(T, f), differential(T, g)
    return (
        evaluate_multivector(Lambda, [df, dg])
        + f * anchor_apply(T, E, g)
        - g * anchor_apply(T, E, f)
    )


def jacobi_bracket(J: JacobiStructure, f: Scalar, g: Scalar) -> Scalar:
    """{f,g} = Λ(δf, δg) + f E(g) - g E(f)."""
    if f.patch != J.base or g.patch != J.base:
        raise StructureMismatchError("functions live over a different patch")
    return _bracket(J.tangent, J.Lambda, J.E, f, g)


def check_jacobi_structure(
    base: BasePatch,
    Lambda: Multivector,
    E: Multivector,
    config: Optional[SampleConfig] = None,
) -> CheckReport:
    """Tensorial conditions plus the Jacobiator on coordinates and samples."""
    _check_tensors(base, Lambda, E)
    config = config or SampleConfig()
    T = tangent_algebroid(base)
    report = CheckReport()

    report.record(
        "jacobi.lambda_lambda",
        "[Λ,Λ] = -2 E∧Λ",
        [({"Lambda": Lambda, "E": E}, schouten(T, Lambda, Lambda) + E.wedge(Lambda) * 2)],
    )
    report.record("jacobi.e_lambda", "[E,Λ] = 0", [({"Lambda": Lambda, "E": E}, schouten(T, E, Lambda))])

    def bracket(f: Scalar, g: Scalar) -> Scalar:
        return _bracket(T, Lambda, E, f, g)

    def jacobiator(f: Scalar, g: Scalar, h: Scalar) -> Scalar:
        return bracket(bracket(f, g), h) + bracket(bracket(g, h), f) + bracket(bracket(h, f), g)

    probes = [Scalar.one(base)] + [Scalar.coordinate(base, i) for i in range(base.dim)]

    def coordinate_triples() -> Iterator:
        for f, g, h in itertools.combinations(probes, 3):
            yield {"f": f, "g": g, "h": h}, jacobiator(f, g, h)

    report.record(
        "jacobi.jacobiator.coordinates",
        "{{f,g},h} + {{g,h},f} + {{h,f},g} = 0",
        coordinate_triples(),
    )

    sampler = Sampler(config, "jacobi.jacobiator.sampled", base)

    def sampled_triples() -> Iterator:
        for _ in range(config.trials):
            f, g, h = sampler.scalar(), sampler.scalar(), sampler.scalar()
            yield {"f": f, "g": g, "h": h}, jacobiator(f, g, h)

    report.record(
        "jacobi.jacobiator.sampled",
        "{{f,g},h} + {{g,h},f} + {{h,f},g} = 0",
        sampled_triples(),
    )

    first_order_sampler = Sampler(config, "jacobi.first_order", base)
    one = Scalar.one(base)

    def first_order() -> Iterator:
        for _ in range(config.trials):
            f, g, h = (first_order_sampler.scalar() for _ in range(3))
            residual = bracket(f * g, h) - (f * bracket(g, h) + g * bracket(f, h) - f * g * bracket(one, h))
            yield {"f": f, "g": g, "h": h}, residual

    report.record(
        "jacobi.first_order",
        "{fg,h} = f{g,h} + g{f,h} - fg{1,h}",
        first_order(),
    )
    logger.debug(
        "[jacobi.check_jacobi_structure] Lambda=%s E=%s failed=%d",
        Lambda.render(),
        E.render(),
        len(report.failures()),
    )
    return report


def _forms_bracket(
    T: Algebroid, Lambda: Multivector, E: Multivector, alpha: Form, f: Scalar, beta: Form, g: Scalar
) -> tuple[Form, Scalar]:
    """The 1-jet bracket of (α, f) and (β, g); E = 0, f = g = 0 is [α, β]_Λ."""
    lambda_ab = evaluate_multivector(Lambda, [alpha, beta])
    first = (
        lie_derivative(T, sharp(Lambda, alpha), beta)
        - lie_derivative(T, sharp(Lambda, beta), alpha)
        - differential(T, lambda_ab)
        + lie_derivative(T, E, beta) * f
        - lie_derivative(T, E, alpha) * g
        - interior_vector_on_form(E, alpha.wedge(beta))
    )
    second = (
        -lambda_ab
        + anchor_apply(T, sharp(Lambda, alpha), g)
        - anchor_apply(T, sharp(Lambda, beta), f)
        + f * anchor_apply(T, E, g)
        - g * anchor_apply(T, E, f)
    )
    return first, second


def one_jet_bracket(
    J: JacobiStructure, left: tuple[Form, Scalar], right: tuple[Form, Scalar]
) -> tuple[Form, Scalar]:
    """⟦(α,f),(β,g)⟧ on arbitrary split covectors (α a 1-form over the tangent coframe)."""
    (alpha, f), (beta, g) = left, right
    for form in (alpha, beta):
        if form.degree != 1:
            raise DegreeError("1-jet sections pair a 1-form with a function")
        J.tangent.check_element(form)
    return _forms_bracket(J.tangent, J.Lambda, J.E, alpha, f, beta, g)


def jet_section(algebroid: Algebroid, alpha: Form, f: Union[Scalar, int]) -> Multivector:
    """(α, f) as a section of the rank n+1 jet algebroid."""
    values = list(alpha.components()) + [f if isinstance(f, Scalar) else Scalar.constant(alpha.patch, f)]
    return algebroid.section(values)


def jet_parts(X: Multivector) -> tuple[Form, Scalar]:
    values = X.components()
    n = X.rank - 1
    return Form.from_list(X.patch, n, values[:n]), values[n]


def cotangent_algebroid(
    base: BasePatch, pi: Multivector, config: Optional[SampleConfig] = None, validate: bool = True
) -> Algebroid:
    """T*M with anchor π♯ and [α,β]_π = L_{π♯α}β - L_{π♯β}α - δ(π(α,β))."""
    zero_e = Multivector.zero(base, base.dim, 1)
    _check_tensors(base, pi, zero_e)
    if validate:
        report = check_jacobi_structure(base, pi, zero_e, config)
        if not report.passed:
            raise ValidationError("π is not a Poisson bivector", report)
    T = tangent_algebroid(base)
    coframe = [T.coframe(i) for i in range(base.dim)]
    anchor = [sharp(pi, coframe[i]).components() for i in range(base.dim)]
    zero = Scalar.zero(base)
    structure = {}
    for i, j in itertools.combinations(range(base.dim), 2):
        form, _ = _forms_bracket(T, pi, zero_e, coframe[i], zero, coframe[j], zero)
        structure[(i, j)] = form.components()
    names = [f"d{name}" for name in base.coord_names]
    algebroid = Algebroid.create(base, names, anchor, structure)
    logger.debug("[jacobi.cotangent_algebroid] pi=%s", pi.render())
    return algebroid


def one_jet_algebroid(J: JacobiStructure) -> tuple[Algebroid, Multivector]:
    """T*M×ℝ with ⟦ , ⟧_(Λ,E) and ρ(α,f) = Λ♯α + fE, plus X0 = (-E, 0) over TM×ℝ."""
    base, n = J.base, J.base.dim
    T = J.tangent
    zero = Scalar.zero(base)
    one = Scalar.one(base)
    pieces: list[tuple[Form, Scalar]] = [(T.coframe(i), zero) for i in range(n)]
    pieces.append((Form.zero(base, n, 1), one))
    anchor = [sharp(J.Lambda, T.coframe(i)).components() for i in range(n)]
    anchor.append(J.E.components())
    structure = {}
    for a, b in itertools.combinations(range(n + 1), 2):
        form, value = _forms_bracket(T, J.Lambda, J.E, *pieces[a], *pieces[b])
        structure[(a, b)] = list(form.components()) + [value]
    names = [f"d{name}" for name in base.coord_names] + ["one"]
    algebroid = Algebroid.create(base, names, anchor, structure)
    x0 = Multivector.from_list(base, n + 1, [-c for c in J.E.components()] + [zero])
    logger.debug("[jacobi.one_jet_algebroid] Lambda=%s E=%s", J.Lambda.render(), J.E.render())
    return algebroid, x0

