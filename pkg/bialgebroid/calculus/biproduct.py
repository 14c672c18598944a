"""The biproduct algebroid A×ℝ and the split description of its multisections.

A multisection of degree r of A×ℝ is written (P, Q) with P of degree r and
Q of degree r-1 over A; the ℝ slot e_∞ is always the last frame index and
join(P, Q) = P + e_∞∧Q (same rule for forms with e^∞).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from bialgebroid.calculus.deformed import Cocycle
from bialgebroid.core.algebroid import Algebroid, differential
from bialgebroid.core.graded import (
    Form,
    Multivector,
    interior_form_on_multivector,
    wedge,
)
from bialgebroid.core.reports import CheckReport
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.errors import DegreeError, StructureMismatchError

logger = logging.getLogger(__name__)

__all__ = [
    "SplitMultivector",
    "SplitForm",
    "extend_algebroid",
    "embed",
    "split",
    "join",
    "split_form",
    "join_form",
    "tilde_contract",
    "tilde_wedge",
    "tilde_differential",
    "verify_biproduct",
]

Graded = Union[Multivector, Form]


@dataclass(frozen=True)
class SplitMultivector:
    P: Multivector
    Q: Optional[Multivector] = None

    def __post_init__(self):
        _check_split(self.P, self.Q)

    @property
    def degree(self) -> int:
        return self.P.degree


@dataclass(frozen=True)
class SplitForm:
    alpha: Form
    beta: Optional[Form] = None

    def __post_init__(self):
        _check_split(self.alpha, self.beta)

    @property
    def degree(self) -> int:
        return self.alpha.degree


def _check_split(head: Graded, tail: Optional[Graded]) -> None:
    if tail is None:
        if head.degree != 0:
            raise DegreeError(f"the ℝ part may only be absent in degree 0, got degree {head.degree}")
        return
    if type(head) is not type(tail) or head.rank != tail.rank or head.patch != tail.patch:
        raise StructureMismatchError("both parts of a split element must live on the same frame")
    if tail.degree != head.degree - 1:
        raise DegreeError(f"split parts must have degrees r and r-1, got {head.degree} and {tail.degree}")


def _pad(value: Optional[Graded], like: Graded, degree: int) -> Optional[Graded]:
    """Missing parts of degree >= 0 become zeros."""
    if value is not None:
        return value
    if degree < 0:
        return None
    return type(like).zero(like.patch, like.rank, degree)


def extend_algebroid(A: Algebroid) -> tuple[Algebroid, Cocycle]:
    """A×ℝ with [(X,f),(Y,g)] = ([X,Y], ρ(X)g - ρ(Y)f) and ρ̃(X,f) = ρ(X).

    Returns the extended algebroid and its canonical cocycle (0, 1) = e^∞.
    """
    name = "one"
    while name in A.frame_names:
        name += "_"
    anchor = [list(row) for row in A.anchor] + [[0] * A.base.dim]
    structure = {key: embed(value, A.rank + 1) for key, value in A.structure.items()}
    extended = Algebroid.create(A.base, list(A.frame_names) + [name], anchor, structure)
    unit = Cocycle.create(extended, Form.basis(A.base, extended.rank, (A.rank,)))
    logger.debug("[biproduct.extend_algebroid] rank %d -> %d", A.rank, extended.rank)
    return extended, unit


def embed(u: Graded, rank: int) -> Graded:
    """The same components read over a larger frame."""
    if rank < u.rank:
        raise StructureMismatchError(f"cannot embed rank {u.rank} into rank {rank}")
    return type(u)._make(u.patch, rank, u.degree, dict(u.items()))


def _join(head: Graded, tail: Optional[Graded]) -> Graded:
    k = head.rank
    out = dict(embed(head, k + 1).items())
    if tail is not None:
        sign = -1 if (head.degree - 1) % 2 else 1
        for key, coeff in tail.items():
            out[key + (k,)] = coeff * sign
    return type(head)._make(head.patch, k + 1, head.degree, out)


def _split(value: Graded):
    k = value.rank - 1
    if k < 0:
        raise StructureMismatchError("cannot split an element of rank 0")
    r = value.degree
    head: dict = {}
    tail: dict = {}
    sign = -1 if (r - 1) % 2 else 1
    for key, coeff in value.items():
        if key and key[-1] == k:
            tail[key[:-1]] = coeff * sign
        else:
            head[key] = coeff
    cls = type(value)
    head_part = cls._make(value.patch, k, r, head)
    tail_part = cls._make(value.patch, k, r - 1, tail) if r else None
    return head_part, tail_part


def join(s: SplitMultivector) -> Multivector:
    return _join(s.P, s.Q)


def split(e: Multivector) -> SplitMultivector:
    if not isinstance(e, Multivector):
        raise StructureMismatchError("split expects a multivector")
    return SplitMultivector(*_split(e))


def join_form(s: SplitForm) -> Form:
    return _join(s.alpha, s.beta)


def split_form(e: Form) -> SplitForm:
    if not isinstance(e, Form):
        raise StructureMismatchError("split_form expects a form")
    return SplitForm(*_split(e))


def tilde_contract(s: SplitForm, t: SplitMultivector) -> SplitMultivector:
    """ι_{(α,β)}(P,Q) = (ι_αP + ι_βQ, (-1)^k ι_αQ)."""
    k, r = s.degree, t.degree
    if k > r:
        raise DegreeError(f"cannot contract degree {k} into degree {r}")
    head = interior_form_on_multivector(s.alpha, t.P)
    if s.beta is not None and t.Q is not None:
        head = head + interior_form_on_multivector(s.beta, t.Q)
    tail = None
    if r - k >= 1:
        tail = interior_form_on_multivector(s.alpha, t.Q) * (-1 if k % 2 else 1)
    return SplitMultivector(head, tail)


def tilde_wedge(s: SplitMultivector, t: SplitMultivector) -> SplitMultivector:
    """(P,Q)∧(P',Q') = (P∧P', Q∧P' + (-1)^r P∧Q')."""
    r = s.degree
    head = wedge(s.P, t.P)
    degree = r + t.degree - 1
    tail = _pad(None, s.P, degree)
    if s.Q is not None:
        tail = tail + wedge(s.Q, t.P)
    if t.Q is not None:
        tail = tail + wedge(s.P, t.Q) * (-1 if r % 2 else 1)
    return SplitMultivector(head, tail)


def tilde_differential(A: Algebroid, s: SplitForm) -> SplitForm:
    """d̃(α, β) = (dα, -dβ)."""
    alpha = differential(A, s.alpha)
    if s.beta is None:
        return SplitForm(alpha, Form.zero(A.base, A.rank, 0))
    return SplitForm(alpha, -differential(A, s.beta))


def verify_biproduct(A: Algebroid, config: Optional[SampleConfig] = None) -> CheckReport:
    """Split operations against the direct rank k+1 computation."""
    config = config or SampleConfig()
    extended, unit = extend_algebroid(A)
    report = CheckReport()
    top = min(A.rank + 1, 3)

    def sampler(label: str) -> Sampler:
        return Sampler(config, label, A.base, A.rank)

    def split_multivector(s: Sampler, degree: int) -> SplitMultivector:
        return SplitMultivector(s.multivector(degree), s.multivector(degree - 1) if degree else None)

    def split_form_sample(s: Sampler, degree: int) -> SplitForm:
        return SplitForm(s.form(degree), s.form(degree - 1) if degree else None)

    def round_trip() -> Iterator:
        s = sampler("biproduct.round_trip")
        for trial in range(config.trials):
            t = split_multivector(s, trial % (top + 1))
            back = split(join(t))
            yield {"P": t.P}, back.P - t.P
            if t.Q is not None:
                yield {"P": t.P, "Q": t.Q}, back.Q - t.Q

    report.record("biproduct.split_join", "split(join(P,Q)) = (P,Q)", round_trip())

    def contract() -> Iterator:
        s = sampler("biproduct.contract")
        for trial in range(config.trials):
            r = trial % (top + 1)
            k = (trial // (top + 1)) % (r + 1)
            form, multivector = split_form_sample(s, k), split_multivector(s, r)
            direct = interior_form_on_multivector(join_form(form), join(multivector))
            yield {"form": join_form(form), "multivector": join(multivector)}, direct - join(
                tilde_contract(form, multivector)
            )

    report.record(
        "biproduct.contract",
        "ι_{(α,β)}(P,Q) = (ι_αP + ι_βQ, (-1)^k ι_αQ)",
        contract(),
    )

    def wedge_case() -> Iterator:
        s = sampler("biproduct.wedge")
        for trial in range(config.trials):
            left = split_multivector(s, trial % (top + 1))
            right = split_multivector(s, (trial // (top + 1)) % (top + 1))
            direct = wedge(join(left), join(right))
            yield {"left": join(left), "right": join(right)}, direct - join(tilde_wedge(left, right))

    report.record("biproduct.wedge", "(P,Q)∧(P',Q') = (P∧P', Q∧P' + (-1)^r P∧Q')", wedge_case())

    def differential_case() -> Iterator:
        s = sampler("biproduct.differential")
        for trial in range(config.trials):
            form = split_form_sample(s, trial % (top + 1))
            direct = differential(extended, join_form(form))
            yield {"form": join_form(form)}, direct - join_form(tilde_differential(A, form))

    report.record("biproduct.differential", "d̃(α,β) = (dα, -dβ)", differential_case())

    logger.debug("[biproduct.verify_biproduct] unit cocycle %s", unit.value.render())
    return report
