"""Graded exterior algebra over a global frame.

`Multivector` lives in Γ∧•A (frame e_1..e_k), `Form` in Γ∧•A* (dual frame
e^1..e^k). Index tuples are 0-based and strictly increasing internally;
rendering and the DSL are 1-based.

Sign convention: contraction acts in the first slot, fixed by the pairing
contract ⟨β, ι_φ P⟩ = ⟨φ∧β, P⟩ and its mirror ⟨ι_X α, Q⟩ = ⟨α, X∧Q⟩.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from bialgebroid.core.scalar import BasePatch, Scalar, scalar_sum
from bialgebroid.errors import DegreeError, IndexRangeError, StructureMismatchError

Index = tuple[int, ...]
Coefficient = Union[Scalar, int, Fraction]

__all__ = [
    "Multivector",
    "Form",
    "Graded",
    "merge_sign",
    "sort_with_sign",
    "wedge",
    "interior_form_on_multivector",
    "interior_vector_on_form",
    "pair",
    "flip",
    "sharp",
    "evaluate_form",
    "evaluate_multivector",
    "wedge_all",
    "all_index_tuples",
]


def merge_sign(first: Index, second: Index) -> int:
    """Sign of the permutation sorting `first + second`; 0 if they overlap."""
    if set(first) & set(second):
        return 0
    inversions = sum(1 for i in first for j in second if i > j)
    return -1 if inversions % 2 else 1


def sort_with_sign(indices: Sequence[int]) -> tuple[int, Index]:
    if len(set(indices)) != len(indices):
        return 0, ()
    items = list(indices)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


class _Graded:
    kind = ""
    symbol = ""

    __slots__ = ("patch", "rank", "degree", "_comps", "_hash")

    def __init__(
        self,
        patch: BasePatch,
        rank: int,
        degree: int,
        components: Optional[Mapping[Sequence[int], Coefficient]] = None,
    ):
        if rank < 0 or degree < 0:
            raise DegreeError(f"rank and degree must be non-negative (rank={rank}, degree={degree})")
        comps: dict[Index, Scalar] = {}
        for raw, coeff in (components or {}).items():
            key = tuple(raw)
            if len(key) != degree:
                raise DegreeError(f"index tuple {key} has length {len(key)}, expected degree {degree}")
            if any(not 0 <= i < rank for i in key):
                raise IndexRangeError(f"index tuple {key} out of range for rank {rank}")
            if any(a >= b for a, b in zip(key, key[1:])):
                raise StructureMismatchError(f"index tuple {key} is not strictly increasing")
            value = _as_scalar(patch, coeff)
            comps[key] = comps[key] + value if key in comps else value
        self.patch = patch
        self.rank = rank
        self.degree = degree
        self._comps = {k: v for k, v in comps.items() if not v.is_zero()}
        self._hash: Optional[int] = None

    @classmethod
    def _make(cls, patch: BasePatch, rank: int, degree: int, comps: dict[Index, Scalar]):
        obj = cls.__new__(cls)
        obj.patch = patch
        obj.rank = rank
        obj.degree = degree
        obj._comps = {k: v for k, v in comps.items() if not v.is_zero()}
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, patch: BasePatch, rank: int, degree: int):
        return cls._make(patch, rank, degree, {})

    @classmethod
    def scalar(cls, patch: BasePatch, rank: int, value: Coefficient):
        return cls._make(patch, rank, 0, {(): _as_scalar(patch, value)})

    @classmethod
    def basis(cls, patch: BasePatch, rank: int, indices: Sequence[int], coeff: Coefficient = 1):
        """`coeff * e_{i1}∧...∧e_{ir}` for indices in any order."""
        if any(not 0 <= i < rank for i in indices):
            raise IndexRangeError(f"frame indices {tuple(indices)} out of range for rank {rank}")
        sign, key = sort_with_sign(indices)
        if sign == 0:
            return cls.zero(patch, rank, len(indices))
        return cls._make(patch, rank, len(indices), {key: _as_scalar(patch, coeff) * sign})

    @classmethod
    def from_list(cls, patch: BasePatch, rank: int, values: Sequence[Coefficient]):
        """Degree-1 element from its k components."""
        if len(values) != rank:
            raise StructureMismatchError(f"expected {rank} components, got {len(values)}")
        return cls._make(patch, rank, 1, {(i,): _as_scalar(patch, v) for i, v in enumerate(values)})

    # inspection

    def component(self, indices: Sequence[int]) -> Scalar:
        return self._comps.get(tuple(indices), Scalar.zero(self.patch))

    def items(self) -> Iterator[tuple[Index, Scalar]]:
        return iter(sorted(self._comps.items()))

    def components(self) -> list[Scalar]:
        """Degree-1 element as a dense list of k Scalars."""
        if self.degree != 1:
            raise DegreeError(f"components() needs degree 1, got degree {self.degree}")
        return [self.component((i,)) for i in range(self.rank)]

    def as_scalar(self) -> Scalar:
        if self.degree != 0:
            raise DegreeError(f"as_scalar() needs degree 0, got degree {self.degree}")
        return self.component(())

    def is_zero(self) -> bool:
        return not self._comps

    def terms(self) -> Iterator["_Graded"]:
        """Single-term pieces `f * e_I`."""
        for key, coeff in self.items():
            yield type(self)._make(self.patch, self.rank, self.degree, {key: coeff})

    def map_coefficients(self, fn):
        return type(self)._make(
            self.patch, self.rank, self.degree, {k: fn(v) for k, v in self._comps.items()}
        )

    # arithmetic

    def _check_same(self, other: "_Graded", *, same_degree: bool = True) -> None:
        if type(other) is not type(self):
            raise StructureMismatchError(f"cannot combine {self.kind} with {other.kind}")
        if other.patch != self.patch or other.rank != self.rank:
            raise StructureMismatchError(
                f"{self.kind}s over different frames (rank {self.rank} vs {other.rank})"
            )
        if same_degree and other.degree != self.degree:
            raise DegreeError(f"cannot add degree {self.degree} and degree {other.degree}")

    def __add__(self, other: object):
        if not isinstance(other, _Graded):
            return NotImplemented
        self._check_same(other)
        out = dict(self._comps)
        for key, coeff in other._comps.items():
            out[key] = out[key] + coeff if key in out else coeff
        return type(self)._make(self.patch, self.rank, self.degree, out)

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other: object):
        if not isinstance(other, _Graded):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: object):
        if isinstance(other, (Scalar, int, Fraction)):
            factor = _as_scalar(self.patch, other)
            return self.map_coefficients(lambda c: c * factor)
        return NotImplemented

    __rmul__ = __mul__

    def wedge(self, other: "_Graded"):
        self._check_same(other, same_degree=False)
        degree = self.degree + other.degree
        out: dict[Index, list[Scalar]] = {}
        for i_key, i_coeff in self._comps.items():
            for j_key, j_coeff in other._comps.items():
                sign = merge_sign(i_key, j_key)
                if sign == 0:
                    continue
                key = tuple(sorted(i_key + j_key))
                out.setdefault(key, []).append(i_coeff * j_coeff * sign)
        return type(self)._make(
            self.patch, self.rank, degree, {k: scalar_sum(self.patch, v) for k, v in out.items()}
        )

    def __xor__(self, other: object):
        if not isinstance(other, _Graded):
            return NotImplemented
        return self.wedge(other)

    # comparison and rendering

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _Graded):
            return NotImplemented
        return (
            type(self) is type(other)
            and self.patch == other.patch
            and self.rank == other.rank
            and self.degree == other.degree
            and self._comps == other._comps
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.kind, self.patch, self.rank, self.degree, frozenset(self._comps.items())))
        return self._hash

    def render(self) -> str:
        if not self._comps:
            return "0"
        if self.degree == 0:
            return self.as_scalar().render()
        pieces = []
        for key, coeff in self.items():
            basis = f"{self.symbol}[{','.join(str(i + 1) for i in key)}]"
            text = coeff.render()
            if text == "1":
                pieces.append(basis)
            elif text == "-1":
                pieces.append(f"-{basis}")
            elif coeff.term_count() > 1:
                pieces.append(f"({text}) * {basis}")
            else:
                pieces.append(f"{text} * {basis}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"{type(self).__name__}(degree={self.degree}, {self.render()!r})"


class Multivector(_Graded):
    """Element of Γ∧ʳA; degree 1 is a section."""

    kind = "multivector"
    symbol = "e"
    __slots__ = ()


class Form(_Graded):
    """Element of Γ∧ᵖA*."""

    kind = "form"
    symbol = "E"
    __slots__ = ()


Graded = Union[Multivector, Form]


def _as_scalar(patch: BasePatch, value: Coefficient) -> Scalar:
    if isinstance(value, Scalar):
        if value.patch != patch:
            raise StructureMismatchError("coefficient lives over a different patch")
        return value
    return Scalar.constant(patch, value)


def wedge(u: Graded, v: Graded) -> Graded:
    return u.wedge(v)


def wedge_all(items: Sequence[Graded]) -> Graded:
    if not items:
        raise DegreeError("wedge_all needs at least one factor")
    out = items[0]
    for item in items[1:]:
        out = out.wedge(item)
    return out


def _contract(inner: _Graded, outer: _Graded, result_cls):
    if type(inner) is type(outer):
        raise StructureMismatchError(f"contraction needs opposite kinds, got two {inner.kind}s")
    if inner.patch != outer.patch or inner.rank != outer.rank:
        raise StructureMismatchError(f"contraction over different frames (rank {inner.rank} vs {outer.rank})")
    if inner.degree > outer.degree:
        raise DegreeError(f"cannot contract degree {inner.degree} into degree {outer.degree}")
    degree = outer.degree - inner.degree
    out: dict[Index, list[Scalar]] = {}
    for i_key, i_coeff in inner._comps.items():
        i_set = set(i_key)
        for j_key, j_coeff in outer._comps.items():
            if not i_set <= set(j_key):
                continue
            rest = tuple(j for j in j_key if j not in i_set)
            sign = merge_sign(i_key, rest)
            out.setdefault(rest, []).append(i_coeff * j_coeff * sign)
    return result_cls._make(
        outer.patch, outer.rank, degree, {k: scalar_sum(outer.patch, v) for k, v in out.items()}
    )


def interior_form_on_multivector(phi: Form, P: Multivector) -> Multivector:
    """ι_φ P, with ⟨β, ι_φP⟩ = ⟨φ∧β, P⟩."""
    if not isinstance(phi, Form) or not isinstance(P, Multivector):
        raise StructureMismatchError("interior_form_on_multivector expects (Form, Multivector)")
    return _contract(phi, P, Multivector)


def interior_vector_on_form(X: Multivector, alpha: Form) -> Form:
    """ι_X α, with ⟨ι_Xα, Q⟩ = ⟨α, X∧Q⟩."""
    if not isinstance(X, Multivector) or not isinstance(alpha, Form):
        raise StructureMismatchError("interior_vector_on_form expects (Multivector, Form)")
    return _contract(X, alpha, Form)


def pair(alpha: Form, P: Multivector) -> Scalar:
    if not isinstance(alpha, Form) or not isinstance(P, Multivector):
        raise StructureMismatchError("pair expects (Form, Multivector)")
    if alpha.patch != P.patch or alpha.rank != P.rank:
        raise StructureMismatchError(f"pairing over different frames (rank {alpha.rank} vs {P.rank})")
    if alpha.degree != P.degree:
        raise DegreeError(f"cannot pair degree {alpha.degree} with degree {P.degree}")
    return scalar_sum(
        P.patch, (coeff * P._comps[key] for key, coeff in alpha._comps.items() if key in P._comps)
    )


def flip(u: Graded) -> Graded:
    """Same components, opposite kind: Γ∧•A read as forms of a dual algebroid."""
    target = Form if isinstance(u, Multivector) else Multivector
    return target._make(u.patch, u.rank, u.degree, dict(u._comps))


def sharp(P: Multivector, alpha: Form) -> Multivector:
    """P♯α = ι_α P, so that ⟨β, P♯α⟩ = P(α, β)."""
    if P.degree != 2 or alpha.degree != 1:
        raise DegreeError(f"sharp needs a bivector and a 1-form, got degrees {P.degree}, {alpha.degree}")
    return interior_form_on_multivector(alpha, P)


def evaluate_form(alpha: Form, sections: Sequence[Multivector]) -> Scalar:
    """α(X_1, ..., X_p) = ⟨α, X_1∧...∧X_p⟩."""
    if len(sections) != alpha.degree:
        raise DegreeError(f"form of degree {alpha.degree} evaluated on {len(sections)} sections")
    if not sections:
        return alpha.as_scalar()
    return pair(alpha, wedge_all(list(sections)))


def evaluate_multivector(P: Multivector, covectors: Sequence[Form]) -> Scalar:
    """P(α_1, ..., α_r) = ⟨α_1∧...∧α_r, P⟩."""
    if len(covectors) != P.degree:
        raise DegreeError(f"multivector of degree {P.degree} evaluated on {len(covectors)} covectors")
    if not covectors:
        return P.as_scalar()
    return pair(wedge_all(list(covectors)), P)


def all_index_tuples(rank: int, degree: int) -> Iterable[Index]:
    return itertools.combinations(range(rank), degree)
