"""Generalized Lie bialgebroids ((A, φ0), (A*, X0)).

A* is a second Algebroid of the same rank whose frame is declared dual to
the frame of A. Its "forms" are the multivectors of A and vice versa, so the
calculus of A* runs on Γ∧•A through `flip`. X0 is kept as a Cocycle of A*,
i.e. as a Form of A* whose components are those of the section X0 of A.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from bialgebroid.calculus.biproduct import extend_algebroid
from bialgebroid.calculus.deformed import (
    Cocycle,
    deformed_anchor_apply,
    deformed_differential,
    deformed_lie_derivative_form,
    deformed_schouten,
)
from bialgebroid.core.algebroid import (
    Algebroid,
    anchor_apply,
    anchor_vector,
    bracket_sections,
    check_axioms,
    lie_derivative,
    tangent_algebroid,
)
from bialgebroid.core.graded import Form, Multivector, flip, pair
from bialgebroid.core.reports import CheckReport
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.core.scalar import BasePatch, Scalar
from bialgebroid.errors import StructureMismatchError, ValidationError
from bialgebroid.structures.jacobi import JacobiStructure, one_jet_algebroid

logger = logging.getLogger(__name__)

__all__ = [
    "GenBialgebroidPair",
    "new_pair",
    "one_jet_pair",
    "check_compatibility",
    "verify_duality_lemmas",
    "dualize",
    "induced_bracket",
    "induced_jacobi",
    "hamiltonian_section",
    "verify_bracket_differentials",
]

Element = Union[Multivector, Form, Scalar]


def _to_dual(u: Element) -> Element:
    return u if isinstance(u, Scalar) else flip(u)


def _vector_field(base: BasePatch, values: list[Scalar]) -> Multivector:
    return Multivector.from_list(base, base.dim, values)


@dataclass(frozen=True, eq=False)
class GenBialgebroidPair:
    A: Algebroid
    phi0: Cocycle
    Adual: Algebroid
    X0: Cocycle

    @property
    def base(self) -> BasePatch:
        return self.A.base

    @property
    def rank(self) -> int:
        return self.A.rank

    @property
    def x0(self) -> Multivector:
        """X0 as a section of A."""
        return flip(self.X0.value)

    def structurally_equal(self, other: "GenBialgebroidPair") -> bool:
        return (
            self.A.structurally_equal(other.A)
            and self.Adual.structurally_equal(other.Adual)
            and self.phi0.value == other.phi0.value
            and self.X0.value == other.X0.value
        )

    # calculus of A, twisted by φ0

    def d(self, alpha: Union[Form, Scalar]) -> Form:
        return deformed_differential(self.A, self.phi0, alpha)

    def anchor(self, X: Multivector, f: Scalar) -> Scalar:
        return deformed_anchor_apply(self.A, self.phi0, X, f)

    def bracket(self, P: Union[Multivector, Scalar], Q: Union[Multivector, Scalar]) -> Multivector:
        return deformed_schouten(self.A, self.phi0, P, Q)

    def lie(self, X: Multivector, alpha: Union[Form, Scalar]) -> Form:
        return deformed_lie_derivative_form(self.A, self.phi0, X, alpha)

    # calculus of A*, twisted by X0, acting on Γ∧•A

    def d_star(self, P: Union[Multivector, Scalar]) -> Multivector:
        return flip(deformed_differential(self.Adual, self.X0, _to_dual(P)))

    def anchor_star(self, xi: Form, f: Scalar) -> Scalar:
        return deformed_anchor_apply(self.Adual, self.X0, flip(xi), f)

    def bracket_star(self, xi: Union[Form, Scalar], eta: Union[Form, Scalar]) -> Form:
        return flip(deformed_schouten(self.Adual, self.X0, _to_dual(xi), _to_dual(eta)))

    def lie_star(self, xi: Form, P: Union[Multivector, Scalar]) -> Multivector:
        return flip(deformed_lie_derivative_form(self.Adual, self.X0, flip(xi), _to_dual(P)))


def new_pair(
    A: Algebroid,
    phi0: Union[Cocycle, Form],
    Adual: Algebroid,
    X0: Union[Cocycle, Multivector],
    config: Optional[SampleConfig] = None,
) -> GenBialgebroidPair:
    """Assemble a pair after checking both algebroids and both cocycles.

    `X0` may be given as a section of A; it is validated as a cocycle of A*.
    """
    if not A.same_shape(Adual):
        raise StructureMismatchError(
            f"A (rank {A.rank}) and its dual (rank {Adual.rank}) must share base and rank"
        )
    report = CheckReport()
    report.extend(check_axioms(A, config), "A.")
    report.extend(check_axioms(Adual, config), "Adual.")
    if not report.passed:
        raise ValidationError("an algebroid of the pair fails the Lie algebroid axioms", report)
    phi_form = phi0.value if isinstance(phi0, Cocycle) else phi0
    x0_form = X0.value if isinstance(X0, Cocycle) else flip(X0)
    A.check_element(phi_form)
    Adual.check_element(x0_form)
    phi_cocycle = Cocycle.create(A, phi_form, config)
    x0_cocycle = Cocycle.create(Adual, x0_form, config)
    logger.debug(
        "[pair.new_pair] rank=%d phi0=%s X0=%s", A.rank, phi_form.render(), flip(x0_form).render()
    )
    return GenBialgebroidPair(A=A, phi0=phi_cocycle, Adual=Adual, X0=x0_cocycle)


def one_jet_pair(J: JacobiStructure, config: Optional[SampleConfig] = None) -> GenBialgebroidPair:
    """((TM×ℝ, (0,1)), (T*M×ℝ, (-E,0))) for a Jacobi structure (Λ, E)."""
    extended, unit = extend_algebroid(tangent_algebroid(J.base))
    jet, x0 = one_jet_algebroid(J)
    return new_pair(extended, unit, jet, x0, config)


def dualize(p: GenBialgebroidPair) -> GenBialgebroidPair:
    """((A*, X0), (A, φ0)); a pure relabeling, hence an involution."""
    return GenBialgebroidPair(A=p.Adual, phi0=p.X0, Adual=p.A, X0=p.phi0)


def _samplers(p: GenBialgebroidPair, config: SampleConfig):
    def make(label: str) -> Sampler:
        return Sampler(config, label, p.base, p.rank)

    return make


def check_compatibility(p: GenBialgebroidPair, config: Optional[SampleConfig] = None) -> CheckReport:
    """The defining conditions of a generalized Lie bialgebroid."""
    config = config or SampleConfig()
    sampler = _samplers(p, config)
    report = CheckReport()
    A, base = p.A, p.base
    frames = [A.frame(i) for i in range(p.rank)]
    phi_form, x0 = p.phi0.value, p.x0

    def derivation_residual(X: Multivector, Y: Multivector) -> Multivector:
        lhs = p.d_star(bracket_sections(A, X, Y))
        return lhs - (p.bracket(p.d_star(X), Y) + p.bracket(X, p.d_star(Y)))

    def derivation_frames() -> Iterator:
        for i, j in itertools.combinations(range(p.rank), 2):
            yield {"X": frames[i], "Y": frames[j]}, derivation_residual(frames[i], frames[j])

    ref_derivation = "d_*^{X0}[X,Y] = [d_*^{X0}X, Y]^{φ0} + [X, d_*^{X0}Y]^{φ0}"
    report.record("pair.derivation.frames", ref_derivation, derivation_frames())

    def derivation_sampled() -> Iterator:
        s = sampler("pair.derivation.sampled")
        for _ in range(config.trials):
            X, Y = s.section(), s.section()
            yield {"X": X, "Y": Y}, derivation_residual(X, Y)

    report.record("pair.derivation.sampled", ref_derivation, derivation_sampled())

    report.record(
        "pair.cocycles.pairing",
        "φ0(X0) = 0",
        [({"phi0": phi_form, "X0": x0}, pair(phi_form, x0))],
    )
    anchors = _vector_field(base, anchor_vector(A, x0)) + _vector_field(
        base, anchor_vector(p.Adual, flip(phi_form))
    )
    report.record(
        "pair.cocycles.anchors",
        "ρ(X0) = -ρ_*(φ0)",
        [({"phi0": phi_form, "X0": x0}, anchors)],
    )

    def lie_star_plain(X: Multivector) -> Multivector:
        return flip(lie_derivative(p.Adual, flip(phi_form), flip(X)))

    def x0_residual(X: Multivector) -> Multivector:
        return lie_star_plain(X) + bracket_sections(A, x0, X)

    def x0_frames() -> Iterator:
        for X in frames:
            yield {"X": X}, x0_residual(X)

    ref_x0 = "L_{*φ0}X + [X0, X] = 0"
    report.record("pair.x0_bracket.frames", ref_x0, x0_frames())

    def x0_sampled() -> Iterator:
        s = sampler("pair.x0_bracket.sampled")
        for _ in range(config.trials):
            X = s.section()
            yield {"X": X}, x0_residual(X)

    report.record("pair.x0_bracket.sampled", ref_x0, x0_sampled())

    def cocycle_lie() -> Iterator:
        s = sampler("pair.cocycle_lie")
        top = min(p.rank, 2)
        for trial in range(config.trials):
            P = s.multivector(trial % (top + 1))
            residual = p.lie_star(phi_form, P) + deformed_schouten(A, p.phi0, x0, P)
            yield {"P": P}, residual

    report.record("pair.cocycle_lie", "L^{X0}_{*φ0}P + L^{φ0}_{X0}P = 0", cocycle_lie())

    logger.debug(
        "[pair.check_compatibility] checks=%d failed=%d", len(report.checks), len(report.failures())
    )
    return report


def verify_duality_lemmas(p: GenBialgebroidPair, config: Optional[SampleConfig] = None) -> CheckReport:
    """The identities leading to the self-duality of a compatible pair."""
    config = config or SampleConfig()
    sampler = _samplers(p, config)
    report = CheckReport()
    A, base = p.A, p.base
    frames = [A.frame(i) for i in range(p.rank)]
    coframes = [A.coframe(i) for i in range(p.rank)]
    coordinates = [Scalar.coordinate(base, j) for j in range(base.dim)]
    probes = [Scalar.one(base)] + coordinates
    phi_form, x0 = p.phi0.value, p.x0

    def function_bracket(X: Multivector, f: Scalar) -> Multivector:
        lhs = p.d_star(p.bracket(X, f))
        return lhs - (p.bracket(p.d_star(X), f) + p.bracket(X, p.d_star(f)))

    def function_bracket_case() -> Iterator:
        s = sampler("lemma.function_bracket")
        for X in frames:
            for f in probes:
                yield {"X": X, "f": f}, function_bracket(X, f)
        for _ in range(config.trials):
            X, f = s.section(), s.scalar()
            yield {"X": X, "f": f}, function_bracket(X, f)

    report.record(
        "lemma.d_star_function_bracket",
        "d_*^{X0}[X,f]^{φ0} = [d_*^{X0}X, f]^{φ0} + [X, d_*^{X0}f]^{φ0}",
        function_bracket_case(),
    )

    def exact_lie_sections() -> Iterator:
        s = sampler("lemma.exact_lie_sections")
        for X in frames:
            for f in coordinates:
                yield {"X": X, "f": f}, p.lie_star(p.d(f), X) + p.bracket(p.d_star(f), X)
        for _ in range(config.trials):
            X, f = s.section(), s.scalar()
            yield {"X": X, "f": f}, p.lie_star(p.d(f), X) + p.bracket(p.d_star(f), X)

    report.record(
        "lemma.exact_lie_sections",
        "L^{X0}_{*d^{φ0}f}X + L^{φ0}_{d_*^{X0}f}X = 0",
        exact_lie_sections(),
    )

    def pairing_sum(f: Scalar, g: Scalar) -> Scalar:
        return pair(p.d(g), p.d_star(f)) + pair(p.d(f), p.d_star(g))

    def antisymmetry() -> Iterator:
        s = sampler("lemma.pairing_antisymmetry")
        for f, g in itertools.product(probes, repeat=2):
            yield {"f": f, "g": g}, pairing_sum(f, g)
        for _ in range(config.trials):
            f, g = s.scalar(), s.scalar()
            yield {"f": f, "g": g}, pairing_sum(f, g)

    report.record(
        "lemma.pairing_antisymmetry",
        "⟨d_*^{X0}f, d^{φ0}g⟩ + ⟨d^{φ0}f, d_*^{X0}g⟩ = 0",
        antisymmetry(),
    )

    def exact_lie_forms() -> Iterator:
        s = sampler("lemma.exact_lie_forms")

        def residual(f: Scalar, xi: Form) -> Form:
            return p.bracket_star(p.d(f), xi) + p.lie(p.d_star(f), xi)

        for xi in coframes:
            for f in coordinates:
                yield {"f": f, "xi": xi}, residual(f, xi)
        for _ in range(config.trials):
            f, xi = s.scalar(), s.covector()
            yield {"f": f, "xi": xi}, residual(f, xi)

    report.record(
        "lemma.exact_lie_forms",
        "L^{X0}_{*d^{φ0}f}ξ + L^{φ0}_{d_*^{X0}f}ξ = 0",
        exact_lie_forms(),
    )

    def d_function_bracket() -> Iterator:
        s = sampler("lemma.d_function_bracket")

        def residual(xi: Form, f: Scalar) -> Form:
            lhs = p.d(p.bracket_star(xi, f))
            return lhs - (p.bracket_star(p.d(xi), f) + p.bracket_star(xi, p.d(f)))

        for xi in coframes:
            for f in probes:
                yield {"xi": xi, "f": f}, residual(xi, f)
        for _ in range(config.trials):
            xi, f = s.covector(), s.scalar()
            yield {"xi": xi, "f": f}, residual(xi, f)

    report.record(
        "lemma.d_function_bracket",
        "d^{φ0}[ξ,f]_*^{X0} = [d^{φ0}ξ, f]_*^{X0} + [ξ, d^{φ0}f]_*^{X0}",
        d_function_bracket(),
    )

    def commutator() -> Iterator:
        s = sampler("lemma.lie_commutator")

        def residual(X: Multivector, xi: Form, f: Scalar) -> Scalar:
            lhs = (
                p.anchor(X, p.anchor_star(xi, f))
                - p.anchor_star(xi, p.anchor(X, f))
                - p.anchor_star(p.lie(X, xi), f)
                + p.anchor(p.lie_star(xi, X), f)
            )
            return lhs - p.anchor(p.d_star(pair(xi, X)), f)

        for X, xi in itertools.product(frames, coframes):
            for f in coordinates:
                yield {"X": X, "xi": xi, "f": f}, residual(X, xi, f)
        for _ in range(config.trials):
            X, xi, f = s.section(), s.covector(), s.scalar()
            yield {"X": X, "xi": xi, "f": f}, residual(X, xi, f)

    report.record(
        "lemma.lie_commutator",
        "[L^{φ0}_X, L^{X0}_{*ξ}]f - L^{X0}_{*L^{φ0}_Xξ}f + L^{φ0}_{L^{X0}_{*ξ}X}f = L^{φ0}_{d_*^{X0}⟨ξ,X⟩}f",
        commutator(),
    )

    def bracket_star_plain(xi: Form, eta: Form) -> Form:
        return flip(bracket_sections(p.Adual, flip(xi), flip(eta)))

    def dual_derivation() -> Iterator:
        s = sampler("lemma.dual_derivation")

        def residual(xi: Form, eta: Form) -> Form:
            lhs = p.d(bracket_star_plain(xi, eta))
            return lhs - (p.bracket_star(p.d(xi), eta) + p.bracket_star(xi, p.d(eta)))

        for i, j in itertools.combinations(range(p.rank), 2):
            yield {"xi": coframes[i], "eta": coframes[j]}, residual(coframes[i], coframes[j])
        for _ in range(config.trials):
            xi, eta = s.covector(), s.covector()
            yield {"xi": xi, "eta": eta}, residual(xi, eta)

    report.record(
        "lemma.dual_derivation",
        "d^{φ0}[ξ,η]_* = [d^{φ0}ξ, η]_*^{X0} + [ξ, d^{φ0}η]_*^{X0}",
        dual_derivation(),
    )

    def observation() -> Iterator:
        s = sampler("lemma.observation")

        def residual(xi: Form) -> Form:
            return bracket_star_plain(phi_form, xi) + lie_derivative(A, x0, xi)

        for xi in coframes:
            yield {"xi": xi}, residual(xi)
        for _ in range(config.trials):
            xi = s.covector()
            yield {"xi": xi}, residual(xi)

    report.record("lemma.observation", "L_{*φ0}ξ + L_{X0}ξ = 0", observation())

    logger.debug(
        "[pair.verify_duality_lemmas] checks=%d failed=%d", len(report.checks), len(report.failures())
    )
    return report


def induced_bracket(p: GenBialgebroidPair, f: Scalar, g: Scalar) -> Scalar:
    """{f,g} = ⟨d^{φ0}f, d_*^{X0}g⟩."""
    if f.patch != p.base or g.patch != p.base:
        raise StructureMismatchError("functions live over a different patch")
    return pair(p.d(f), p.d_star(g))


def induced_jacobi(p: GenBialgebroidPair) -> JacobiStructure:
    """Λ(δf, δg) = ⟨df, d_*g⟩ and E = ρ_*(φ0).

    The result is not validated here; callers run check_jacobi_structure.
    """
    base, n = p.base, p.base.dim
    rho, rho_star = p.A.anchor, p.Adual.anchor
    components = {}
    for i, j in itertools.combinations(range(n), 2):
        value = Scalar.zero(base)
        for a in range(p.rank):
            value = value + rho[a][i] * rho_star[a][j]
        components[(i, j)] = value
    Lambda = Multivector(base, n, 2, components)
    E = _vector_field(base, anchor_vector(p.Adual, flip(p.phi0.value)))
    logger.debug("[pair.induced_jacobi] Lambda=%s E=%s", Lambda.render(), E.render())
    return JacobiStructure(base=base, Lambda=Lambda, E=E)


def hamiltonian_section(p: GenBialgebroidPair, f: Scalar) -> Multivector:
    """X_f = -d_*^{X0}f."""
    if f.patch != p.base:
        raise StructureMismatchError("function lives over a different patch")
    return -p.d_star(f)


def verify_bracket_differentials(
    p: GenBialgebroidPair, config: Optional[SampleConfig] = None
) -> CheckReport:
    """Differentials of the induced bracket, its Jacobi identity and the Hamiltonian sections."""
    config = config or SampleConfig()
    report = CheckReport()
    base = p.base
    probes = [Scalar.one(base)] + [Scalar.coordinate(base, j) for j in range(base.dim)]

    def bracket(f: Scalar, g: Scalar) -> Scalar:
        return induced_bracket(p, f, g)

    def pairs(label: str) -> Iterator[tuple[Scalar, Scalar]]:
        yield from itertools.product(probes, repeat=2)
        s = Sampler(config, label, base)
        for _ in range(config.trials):
            yield s.scalar(), s.scalar()

    def d_case() -> Iterator:
        for f, g in pairs("induced.d_bracket"):
            lhs = p.d(bracket(f, g))
            rhs = flip(bracket_sections(p.Adual, flip(p.d(f)), flip(p.d(g))))
            yield {"f": f, "g": g}, lhs - rhs

    report.record("induced.d_bracket", "d^{φ0}{f,g} = [d^{φ0}f, d^{φ0}g]_*", d_case())

    def d_star_case() -> Iterator:
        for f, g in pairs("induced.d_star_bracket"):
            lhs = p.d_star(bracket(f, g))
            rhs = -bracket_sections(p.A, p.d_star(f), p.d_star(g))
            yield {"f": f, "g": g}, lhs - rhs

    report.record(
        "induced.d_star_bracket", "d_*^{X0}{f,g} = -[d_*^{X0}f, d_*^{X0}g]", d_star_case()
    )

    def antisymmetry() -> Iterator:
        for f, g in pairs("induced.antisymmetry"):
            yield {"f": f, "g": g}, bracket(f, g) + bracket(g, f)

    report.record("induced.antisymmetry", "{f,g} = -{g,f}", antisymmetry())

    def jacobiator(f: Scalar, g: Scalar, h: Scalar) -> Scalar:
        return bracket(bracket(f, g), h) + bracket(bracket(g, h), f) + bracket(bracket(h, f), g)

    def jacobi_coordinates() -> Iterator:
        for f, g, h in itertools.combinations(probes, 3):
            yield {"f": f, "g": g, "h": h}, jacobiator(f, g, h)

    ref_jacobi = "{{f,g},h} + {{g,h},f} + {{h,f},g} = 0"
    report.record("induced.jacobi.coordinates", ref_jacobi, jacobi_coordinates())

    def jacobi_sampled() -> Iterator:
        s = Sampler(config, "induced.jacobi.sampled", base)
        for _ in range(config.trials):
            f, g, h = s.scalar(), s.scalar(), s.scalar()
            yield {"f": f, "g": g, "h": h}, jacobiator(f, g, h)

    report.record("induced.jacobi.sampled", ref_jacobi, jacobi_sampled())

    def hamiltonian_anchor() -> Iterator:
        for f, g in pairs("induced.hamiltonian.anchor"):
            yield {"f": f, "g": g}, p.anchor(hamiltonian_section(p, f), g) - bracket(f, g)

    report.record("induced.hamiltonian.anchor", "ρ^{φ0}(X_f)g = {f,g}", hamiltonian_anchor())

    def hamiltonian_bracket() -> Iterator:
        for f, g in pairs("induced.hamiltonian.bracket"):
            lhs = bracket_sections(p.A, hamiltonian_section(p, f), hamiltonian_section(p, g))
            yield {"f": f, "g": g}, lhs - hamiltonian_section(p, bracket(f, g))

    report.record("induced.hamiltonian.bracket", "[X_f, X_g] = X_{{f,g}}", hamiltonian_bracket())

    def unit_bracket() -> Iterator:
        one = Scalar.one(base)
        phi_dual = flip(p.phi0.value)
        for _, g in pairs("induced.unit"):
            yield {"g": g}, bracket(one, g) - anchor_apply(p.Adual, phi_dual, g)

    report.record("induced.unit", "{1,g} = ρ_*(φ0)g", unit_bracket())

    logger.debug(
        "[pair.verify_bracket_differentials] checks=%d failed=%d",
        len(report.checks),
        len(report.failures()),
    )
    return report
