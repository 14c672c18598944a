"""Lie algebroids over a coordinate patch and their undeformed calculus.

An `Algebroid` is raw data: frame size, anchor matrix and structure
functions [e_i, e_j] for i < j. Nothing is validated at construction;
`check_axioms` is the explicit validation step.
"""
from __future__ import annotations

import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Mapping, Optional, Sequence, Union

from bialgebroid.core.graded import (
    Form,
    Multivector,
    all_index_tuples,
    interior_vector_on_form,
    sort_with_sign,
)
from bialgebroid.core.reports import CheckReport
from bialgebroid.core.sampling import SampleConfig, Sampler
from bialgebroid.core.scalar import BasePatch, Number, Scalar, scalar_sum
from bialgebroid.errors import DegreeError, IndexRangeError, StructureMismatchError

logger = logging.getLogger(__name__)

# single-term Schouten brackets, keyed by algebroid identity
SCHOUTEN_CACHE_SIZE = 4096

__all__ = [
    "Algebroid",
    "tangent_algebroid",
    "lie_algebra",
    "anchor_apply",
    "anchor_vector",
    "frame_derivation",
    "bracket_sections",
    "differential",
    "lie_derivative",
    "schouten",
    "as_multivector",
    "as_form",
    "check_axioms",
]

Pair = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Algebroid:
    """(A, [ , ], ρ) on a trivial bundle of rank `rank` over `base`.

    `anchor[i][j]` is the ∂/∂x_j component of ρ(e_i); `structure[(i, j)]`
    (0-based, i < j) is the section [e_i, e_j].
    """

    base: BasePatch
    rank: int
    frame_names: tuple[str, ...]
    anchor: tuple[tuple[Scalar, ...], ...]
    structure: Mapping[Pair, Multivector]

    @classmethod
    def create(
        cls,
        base: BasePatch,
        frame_names: Sequence[str],
        anchor: Sequence[Sequence[Union[Scalar, Number]]],
        structure: Optional[Mapping[Pair, Union[Multivector, Sequence[Union[Scalar, Number]]]]] = None,
    ) -> "Algebroid":
        rank = len(frame_names)
        if len(set(frame_names)) != rank:
            raise StructureMismatchError(f"frame names must be unique: {list(frame_names)}")
        if len(anchor) != rank or any(len(row) != base.dim for row in anchor):
            raise StructureMismatchError(f"anchor must be a {rank}x{base.dim} matrix")
        rows = tuple(
            tuple(v if isinstance(v, Scalar) else Scalar.constant(base, v) for v in row) for row in anchor
        )
        for row in rows:
            for value in row:
                if value.patch != base:
                    raise StructureMismatchError("anchor entry lives over a different patch")
        table: dict[Pair, Multivector] = {}
        for (i, j), value in (structure or {}).items():
            if not (0 <= i < rank and 0 <= j < rank):
                raise IndexRangeError(f"bracket indices ({i}, {j}) out of range for rank {rank}")
            if i >= j:
                raise StructureMismatchError(f"structure entries need i < j, got ({i}, {j})")
            section = value if isinstance(value, Multivector) else Multivector.from_list(base, rank, value)
            if section.degree != 1 or section.rank != rank or section.patch != base:
                raise StructureMismatchError(f"structure entry ({i}, {j}) is not a section of this bundle")
            if not section.is_zero():
                table[(i, j)] = section
        return cls(base=base, rank=rank, frame_names=tuple(frame_names), anchor=rows, structure=table)

    # frame data

    def frame(self, i: int) -> Multivector:
        return Multivector.basis(self.base, self.rank, (i,))

    def coframe(self, i: int) -> Form:
        return Form.basis(self.base, self.rank, (i,))

    def section(self, values: Sequence[Union[Scalar, Number]]) -> Multivector:
        return Multivector.from_list(self.base, self.rank, values)

    def covector(self, values: Sequence[Union[Scalar, Number]]) -> Form:
        return Form.from_list(self.base, self.rank, values)

    def structure_bracket(self, i: int, j: int) -> Multivector:
        if i == j:
            return Multivector.zero(self.base, self.rank, 1)
        if i < j:
            return self.structure.get((i, j), Multivector.zero(self.base, self.rank, 1))
        return -self.structure.get((j, i), Multivector.zero(self.base, self.rank, 1))

    def same_shape(self, other: "Algebroid") -> bool:
        return self.base == other.base and self.rank == other.rank

    def structurally_equal(self, other: "Algebroid") -> bool:
        return (
            self.same_shape(other)
            and self.anchor == other.anchor
            and dict(self.structure) == dict(other.structure)
        )

    def check_element(self, value: Union[Multivector, Form]) -> None:
        if value.patch != self.base or value.rank != self.rank:
            raise StructureMismatchError(
                f"element of rank {value.rank} does not live on this algebroid (rank {self.rank})"
            )


def tangent_algebroid(base: BasePatch) -> Algebroid:
    """TM with frame ∂/∂x_i, identity anchor and vanishing structure functions."""
    identity = [[1 if i == j else 0 for j in range(base.dim)] for i in range(base.dim)]
    return Algebroid.create(base, [f"D{name}" for name in base.coord_names], identity)


def lie_algebra(
    rank: int,
    structure: Mapping[Pair, Sequence[Number]],
    frame_names: Optional[Sequence[str]] = None,
) -> Algebroid:
    """A Lie algebra viewed as an algebroid over a point."""
    base = BasePatch()
    names = list(frame_names) if frame_names is not None else [f"e{i + 1}" for i in range(rank)]
    return Algebroid.create(base, names, [[] for _ in range(rank)], structure)


def as_multivector(A: Algebroid, value: Union[Multivector, Scalar, Number]) -> Multivector:
    if isinstance(value, Multivector):
        A.check_element(value)
        return value
    if isinstance(value, Form):
        raise StructureMismatchError("expected a multivector, got a form")
    return Multivector.scalar(A.base, A.rank, value)


def as_form(A: Algebroid, value: Union[Form, Scalar, Number]) -> Form:
    if isinstance(value, Form):
        A.check_element(value)
        return value
    if isinstance(value, Multivector):
        raise StructureMismatchError("expected a form, got a multivector")
    return Form.scalar(A.base, A.rank, value)


def _check_section(A: Algebroid, X: Multivector) -> None:
    if not isinstance(X, Multivector) or X.degree != 1:
        raise DegreeError("expected a section (degree-1 multivector)")
    A.check_element(X)


def _check_scalar(A: Algebroid, f: Scalar) -> None:
    if f.patch != A.base:
        raise StructureMismatchError("function lives over a different patch")


def frame_derivation(A: Algebroid, i: int, f: Scalar) -> Scalar:
    """ρ(e_i) f."""
    return scalar_sum(
        A.base, (coeff * f.partial(j) for j, coeff in enumerate(A.anchor[i]) if not coeff.is_zero())
    )


def anchor_apply(A: Algebroid, X: Multivector, f: Scalar) -> Scalar:
    _check_section(A, X)
    _check_scalar(A, f)
    return scalar_sum(A.base, (coeff * frame_derivation(A, key[0], f) for key, coeff in X.items()))


def anchor_vector(A: Algebroid, X: Multivector) -> list[Scalar]:
    """Components of ρ(X) in the coordinate frame ∂/∂x_j."""
    _check_section(A, X)
    return [
        scalar_sum(A.base, (coeff * A.anchor[key[0]][j] for key, coeff in X.items()))
        for j in range(A.base.dim)
    ]


def bracket_sections(A: Algebroid, X: Multivector, Y: Multivector) -> Multivector:
    """Leibniz extension of the frame structure functions."""
    _check_section(A, X)
    _check_section(A, Y)
    xs = dict((key[0], coeff) for key, coeff in X.items())
    ys = dict((key[0], coeff) for key, coeff in Y.items())
    out: dict[int, list[Scalar]] = {}
    for i, a in xs.items():
        for j, b in ys.items():
            if i == j:
                continue
            ab = a * b
            for (m,), c in A.structure_bracket(i, j).items():
                out.setdefault(m, []).append(ab * c)
    for i, a in xs.items():
        for m, b in ys.items():
            out.setdefault(m, []).append(a * frame_derivation(A, i, b))
    for j, b in ys.items():
        for m, a in xs.items():
            out.setdefault(m, []).append(-(b * frame_derivation(A, j, a)))
    return Multivector._make(
        A.base, A.rank, 1, {(m,): scalar_sum(A.base, values) for m, values in out.items()}
    )


def _form_on_frame(alpha: Form, indices: Sequence[int]) -> Scalar:
    sign, key = sort_with_sign(indices)
    if sign == 0:
        return Scalar.zero(alpha.patch)
    value = alpha.component(key)
    return -value if sign < 0 else value


def differential(A: Algebroid, alpha: Union[Form, Scalar]) -> Form:
    """Cartan formula evaluated on frame tuples."""
    alpha = as_form(A, alpha)
    p = alpha.degree
    if p + 1 > A.rank:
        return Form.zero(A.base, A.rank, p + 1)
    out: dict[tuple[int, ...], Scalar] = {}
    for idx in all_index_tuples(A.rank, p + 1):
        terms: list[Scalar] = []
        for a, i in enumerate(idx):
            rest = idx[:a] + idx[a + 1:]
            value = _form_on_frame(alpha, rest)
            if not value.is_zero():
                term = frame_derivation(A, i, value)
                terms.append(-term if a % 2 else term)
        for a, b in itertools.combinations(range(p + 1), 2):
            bracket = A.structure_bracket(idx[a], idx[b])
            if bracket.is_zero():
                continue
            rest = tuple(v for pos, v in enumerate(idx) if pos not in (a, b))
            value = scalar_sum(
                A.base, (c * _form_on_frame(alpha, (m,) + rest) for (m,), c in bracket.items())
            )
            terms.append(-value if (a + b) % 2 else value)
        out[idx] = scalar_sum(A.base, terms)
    return Form._make(A.base, A.rank, p + 1, out)


def lie_derivative(A: Algebroid, X: Multivector, alpha: Union[Form, Scalar]) -> Form:
    """L_X = d ι_X + ι_X d."""
    _check_section(A, X)
    alpha = as_form(A, alpha)
    if alpha.degree == 0:
        return Form.scalar(A.base, A.rank, anchor_apply(A, X, alpha.as_scalar()))
    return differential(A, interior_vector_on_form(X, alpha)) + interior_vector_on_form(
        X, differential(A, alpha)
    )


def schouten(
    A: Algebroid, P: Union[Multivector, Scalar], Q: Union[Multivector, Scalar]
) -> Multivector:
    """Schouten bracket by recursive Leibniz expansion on single terms.

    [f, g] is returned as the zero of degree 0.
    """
    P = as_multivector(A, P)
    Q = as_multivector(A, Q)
    degree = max(P.degree + Q.degree - 1, 0)
    pieces = [
        _schouten_term(A, i_key, f, j_key, g) for i_key, f in P.items() for j_key, g in Q.items()
    ]
    return _sum_multivectors(A, degree, pieces)


def _sum_multivectors(A: Algebroid, degree: int, pieces: Sequence[Multivector]) -> Multivector:
    out: dict[tuple[int, ...], list[Scalar]] = {}
    for piece in pieces:
        for key, coeff in piece.items():
            out.setdefault(key, []).append(coeff)
    return Multivector._make(A.base, A.rank, degree, {k: scalar_sum(A.base, v) for k, v in out.items()})


@functools.lru_cache(maxsize=SCHOUTEN_CACHE_SIZE)
def _schouten_term(A: Algebroid, i_key: tuple, f: Scalar, j_key: tuple, g: Scalar) -> Multivector:
    r, s = len(i_key), len(j_key)
    base, rank = A.base, A.rank
    if r == 0 and s == 0:
        out = Multivector.zero(base, rank, 0)
    elif r == 1 and s == 0:
        out = Multivector.scalar(base, rank, f * frame_derivation(A, i_key[0], g))
    elif r == 0 and s == 1:
        out = Multivector.scalar(base, rank, -(g * frame_derivation(A, j_key[0], f)))
    elif r == 1 and s == 1:
        out = bracket_sections(
            A, Multivector.basis(base, rank, i_key, f), Multivector.basis(base, rank, j_key, g)
        )
    elif s >= 2:
        # [p, a∧b] = [p, a]∧b + (-1)^(r-1) a∧[p, b]
        one = Scalar.one(base)
        head, tail = j_key[:1], j_key[1:]
        first = _schouten_term(A, i_key, f, head, g).wedge(Multivector.basis(base, rank, tail))
        second = Multivector.basis(base, rank, head, g).wedge(_schouten_term(A, i_key, f, tail, one))
        out = first - second if (r - 1) % 2 else first + second
    else:
        # [p, q] = -(-1)^((r-1)(s-1)) [q, p]
        swapped = _schouten_term(A, j_key, g, i_key, f)
        out = swapped if ((r - 1) * (s - 1)) % 2 else -swapped
    return out


def jacobiator(A: Algebroid, X: Multivector, Y: Multivector, Z: Multivector) -> Multivector:
    return (
        bracket_sections(A, bracket_sections(A, X, Y), Z)
        + bracket_sections(A, bracket_sections(A, Y, Z), X)
        + bracket_sections(A, bracket_sections(A, Z, X), Y)
    )


def _coordinate_probes(A: Algebroid) -> list[Scalar]:
    return [Scalar.coordinate(A.base, j) for j in range(A.base.dim)]


def _anchor_defect(A: Algebroid, X: Multivector, Y: Multivector, f: Scalar) -> Scalar:
    return anchor_apply(A, bracket_sections(A, X, Y), f) - (
        anchor_apply(A, X, anchor_apply(A, Y, f)) - anchor_apply(A, Y, anchor_apply(A, X, f))
    )


def check_axioms(A: Algebroid, config: Optional[SampleConfig] = None) -> CheckReport:
    """Jacobi identity and anchor homomorphism on frames and sampled sections."""
    config = config or SampleConfig()
    report = CheckReport()
    frames = [A.frame(i) for i in range(A.rank)]

    def frame_jacobi() -> Iterator:
        for i, j, l in itertools.combinations(range(A.rank), 3):
            inputs = {"X": frames[i], "Y": frames[j], "Z": frames[l]}
            yield inputs, jacobiator(A, frames[i], frames[j], frames[l])

    report.record("algebroid.jacobi.frames", "[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0", frame_jacobi())

    def frame_anchor() -> Iterator:
        for i, j in itertools.combinations(range(A.rank), 2):
            for f in _coordinate_probes(A):
                inputs = {"X": frames[i], "Y": frames[j], "f": f}
                yield inputs, _anchor_defect(A, frames[i], frames[j], f)

    report.record("algebroid.anchor.frames", "ρ([X,Y]) = [ρ(X), ρ(Y)]", frame_anchor())

    if A.rank:
        sampler = Sampler(config, "algebroid.jacobi.sampled", A.base, A.rank)

        def sampled_jacobi() -> Iterator:
            for _ in range(config.trials):
                X, Y, Z = sampler.section(), sampler.section(), sampler.section()
                yield {"X": X, "Y": Y, "Z": Z}, jacobiator(A, X, Y, Z)

        report.record(
            "algebroid.jacobi.sampled", "[[X,Y],Z] + [[Y,Z],X] + [[Z,X],Y] = 0", sampled_jacobi()
        )

        anchor_sampler = Sampler(config, "algebroid.anchor.sampled", A.base, A.rank)

        def sampled_anchor() -> Iterator:
            for _ in range(config.trials):
                X, Y, f = anchor_sampler.section(), anchor_sampler.section(), anchor_sampler.scalar()
                yield {"X": X, "Y": Y, "f": f}, _anchor_defect(A, X, Y, f)

        report.record("algebroid.anchor.sampled", "ρ([X,Y])f = ρ(X)ρ(Y)f - ρ(Y)ρ(X)f", sampled_anchor())

    logger.debug(
        "[algebroid.check_axioms] rank=%d dim=%d checks=%d failed=%d",
        A.rank,
        A.base.dim,
        len(report.checks),
        len(report.failures()),
    )
    return report
