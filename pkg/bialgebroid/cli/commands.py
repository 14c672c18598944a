"""Command handlers behind `python -m bialgebroid`.

Each handler takes a loaded `Workspace` and returns an `Outcome`: the checks
that ran plus any emitted text. A `ValidationError` raised while assembling an
object turns into failed checks; DSL errors propagate to the entry point.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable

from bialgebroid.calculus.deformed import Cocycle, is_cocycle
from bialgebroid.core.algebroid import check_axioms
from bialgebroid.core.reports import CheckReport, RunReport
from bialgebroid.core.sampling import SampleConfig
from bialgebroid.dsl.loader import Workspace, jacobi_file, load_text, pair_file
from bialgebroid.dsl.nodes import StructureFile
from bialgebroid.dsl.render import render_file
from bialgebroid.errors import DslSemanticError, ValidationError
from bialgebroid.structures.jacobi import JacobiStructure, check_jacobi_structure
from bialgebroid.structures.morphism import canonical_morphism, is_morphism
from bialgebroid.structures.pair import (
    GenBialgebroidPair,
    check_compatibility,
    dualize,
    induced_jacobi,
    one_jet_pair,
    verify_bracket_differentials,
    verify_duality_lemmas,
)
from bialgebroid.structures.triangular import (
    TriangularDatum,
    build_dual,
    check_maurer_cartan,
    verify_triangular,
)

logger = logging.getLogger(__name__)

__all__ = ["Outcome", "COMMANDS", "run_command", "to_run_report"]


@dataclass
class Outcome:
    report: CheckReport = field(default_factory=CheckReport)
    artifacts: dict[str, str] = field(default_factory=dict)
    emitted: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.report.passed


@dataclass(frozen=True)
class _Difference:
    """Residual of a check that compares rendered text."""

    text: str = ""

    def is_zero(self) -> bool:
        return not self.text

    def render(self) -> str:
        return self.text


def _full_suite(p: GenBialgebroidPair, config: SampleConfig) -> CheckReport:
    report = CheckReport()
    report.extend(check_compatibility(p, config))
    report.extend(verify_duality_lemmas(p, config))
    report.extend(verify_bracket_differentials(p, config))
    return report


def _emit(outcome: Outcome, name: str, source: StructureFile) -> str:
    text = render_file(source)
    outcome.artifacts[name] = text
    outcome.emitted.append(text)
    return text


def _check_round_trip(outcome: Outcome, name: str, text: str, p: GenBialgebroidPair, config: SampleConfig):
    reloaded = load_text(text).build_pair(name, config)
    difference = _Difference("" if reloaded.structurally_equal(p) else "emitted file reloads to a different pair")
    outcome.report.record("emit.round_trip", "parse(render(p)) = p", [({"pair": name}, difference)])


def _jacobi_artifacts(outcome: Outcome, name: str, J: JacobiStructure) -> None:
    outcome.artifacts["Lambda"] = J.Lambda.render()
    outcome.artifacts["E"] = J.E.render()
    _emit(outcome, name, jacobi_file(name, J))


def validate(ws: Workspace, config: SampleConfig) -> Outcome:
    """Lie algebroid axioms, cocycle conditions and Jacobi identities of every declaration."""
    outcome = Outcome()
    for name, A in ws.algebroids.items():
        outcome.report.extend(check_axioms(A, config), f"{name}.")
    for name, (owner, phi) in ws.cocycles.items():
        outcome.report.extend(is_cocycle(ws.algebroids[owner], phi, config), f"{name}.")
    for name, J in ws.jacobi.items():
        outcome.report.extend(check_jacobi_structure(J.base, J.Lambda, J.E, config), f"{name}.")
    return outcome


def check_pair(ws: Workspace, name: str, config: SampleConfig) -> Outcome:
    outcome = Outcome()
    outcome.report.extend(_full_suite(ws.build_pair(name, config), config))
    return outcome


def dualize_pair(ws: Workspace, name: str, config: SampleConfig) -> Outcome:
    """Dual of a declared pair, or of the 1-jet pair of a Jacobi declaration."""
    outcome = Outcome()
    if ws.lookup(name, "pair", "jacobi") == "jacobi":
        p = one_jet_pair(ws.jacobi[name], config)
    else:
        p = ws.build_pair(name, config)
    dual = dualize(p)
    dual_name = f"{name}_dual"
    text = _emit(outcome, dual_name, pair_file(dual_name, dual))
    _check_round_trip(outcome, dual_name, text, dual, config)
    outcome.report.extend(check_compatibility(dual, config))
    outcome.report.extend(verify_duality_lemmas(dual, config))
    return outcome


def induce(ws: Workspace, name: str, config: SampleConfig) -> Outcome:
    """Induced Jacobi structure of a pair, or the round trip through the 1-jet pair of a declaration."""
    outcome = Outcome()
    if ws.lookup(name, "jacobi", "pair") == "jacobi":
        J = ws.jacobi[name]
        induced = induced_jacobi(one_jet_pair(J, config))
        outcome.report.record(
            "induce.round_trip",
            "the 1-jet pair induces (Λ, E)",
            [({"Lambda": J.Lambda}, induced.Lambda - J.Lambda), ({"E": J.E}, induced.E - J.E)],
        )
    else:
        induced = induced_jacobi(ws.build_pair(name, config))
    outcome.report.extend(check_jacobi_structure(induced.base, induced.Lambda, induced.E, config), "induced.")
    _jacobi_artifacts(outcome, f"{name}_induced", induced)
    return outcome


def triangular(ws: Workspace, algebroid: str, cocycle: str, bivector: str, config: SampleConfig) -> Outcome:
    outcome = Outcome()
    ws.lookup(algebroid, "algebroid")
    ws.lookup(cocycle, "cocycle")
    ws.lookup(bivector, "bivector")
    A = ws.algebroids[algebroid]
    owner, phi = ws.cocycles[cocycle]
    on, P = ws.bivectors[bivector]
    for what, declared_on in ((cocycle, owner), (bivector, on)):
        if declared_on != algebroid:
            raise DslSemanticError(f"{what!r} is declared on {declared_on!r}, not on {algebroid!r}")
    phi0 = Cocycle.create(A, phi, config)
    outcome.report.extend(check_maurer_cartan(A, phi0, P))
    if not outcome.passed:
        return outcome
    t = TriangularDatum(A=A, phi0=phi0, P=P)
    pair_name = f"{bivector}_triangular"
    p = build_dual(t, config)
    text = _emit(outcome, pair_name, pair_file(pair_name, p))
    _check_round_trip(outcome, pair_name, text, p, config)
    outcome.report.extend(verify_triangular(t, config))
    return outcome


def jacobi(ws: Workspace, name: str, config: SampleConfig) -> Outcome:
    outcome = Outcome()
    ws.lookup(name, "jacobi")
    J = ws.jacobi[name]
    outcome.report.extend(check_jacobi_structure(J.base, J.Lambda, J.E, config), f"{name}.")
    if not outcome.passed:
        return outcome
    p = one_jet_pair(J, config)
    pair_name = f"{name}_jet"
    text = _emit(outcome, pair_name, pair_file(pair_name, p))
    _check_round_trip(outcome, pair_name, text, p, config)
    outcome.report.extend(_full_suite(p, config))
    return outcome


def morphism(ws: Workspace, name: str, config: SampleConfig) -> Outcome:
    """is_morphism on a declared morphism, or on the canonical morphism of a pair.

    A Jacobi declaration stands for its 1-jet pair.
    """
    outcome = Outcome()
    kind = ws.lookup(name, "pair", "morphism", "jacobi")
    if kind == "pair":
        m = canonical_morphism(ws.build_pair(name, config), config)
    elif kind == "jacobi":
        m = canonical_morphism(one_jet_pair(ws.jacobi[name], config), config)
    else:
        m = ws.build_morphism(name, config)
    outcome.artifacts["matrix"] = "\n".join(
        "[" + ", ".join(value.render() for value in row) + "]" for row in m.matrix
    )
    outcome.report.extend(is_morphism(m, config))
    return outcome


COMMANDS: dict[str, tuple[Callable[..., Outcome], tuple[str, ...]]] = {
    "validate": (validate, ()),
    "check-pair": (check_pair, ("pair",)),
    "dualize": (dualize_pair, ("name",)),
    "induce": (induce, ("name",)),
    "triangular": (triangular, ("algebroid", "cocycle", "bivector")),
    "jacobi": (jacobi, ("name",)),
    "morphism": (morphism, ("name",)),
}


def run_command(command: str, ws: Workspace, names: list[str], config: SampleConfig) -> Outcome:
    handler, _ = COMMANDS[command]
    try:
        outcome = handler(ws, *names, config)
    except ValidationError as exc:
        logger.info("[commands.run_command] %s refused: %s", command, exc)
        outcome = Outcome()
        if exc.report is not None and exc.report.checks:
            outcome.report.extend(exc.report)
        else:
            outcome.report.record("construction", str(exc), [({}, _Difference(str(exc)))])
    logger.debug(
        "[commands.run_command] %s: checks=%d failed=%d",
        command,
        len(outcome.report.checks),
        len(outcome.report.failures()),
    )
    return outcome


def to_run_report(command: str, config: SampleConfig, outcome: Outcome) -> RunReport:
    return RunReport(
        command=command, seed=config.seed, checks=outcome.report.checks, artifacts=outcome.artifacts
    )
