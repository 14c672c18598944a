"""Exact sparse multivariate polynomials over the rationals.

These are the coefficient functions of every section in the package: a
`Scalar` is a finite map from exponent vectors to nonzero `Fraction`
coefficients over a fixed `BasePatch` of named coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence, Union

from bialgebroid.errors import IndexRangeError, StructureMismatchError

Exponent = tuple[int, ...]
Number = Union[int, Fraction]


@dataclass(frozen=True)
class BasePatch:
    """A single coordinate patch; `dim == 0` is a point."""

    coord_names: tuple[str, ...] = ()

    def __post_init__(self):
        names = tuple(self.coord_names)
        object.__setattr__(self, "coord_names", names)
        if len(set(names)) != len(names):
            raise StructureMismatchError(f"coordinate names must be unique: {names}")

    @classmethod
    def of(cls, *names: str) -> "BasePatch":
        return cls(tuple(names))

    @property
    def dim(self) -> int:
        return len(self.coord_names)

    def index(self, name: str) -> int:
        try:
            return self.coord_names.index(name)
        except ValueError:
            raise IndexRangeError(f"unknown coordinate {name!r} (coords: {list(self.coord_names)})") from None


def _grlex_key(exp: Exponent) -> tuple[int, Exponent]:
    return (sum(exp), exp)


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Scalar:
    """Immutable polynomial in canonical sparse form (no zero coefficients)."""

    __slots__ = ("patch", "_terms", "_hash")

    def __init__(self, patch: BasePatch, terms: Optional[Mapping[Sequence[int], Number]] = None):
        clean: dict[Exponent, Fraction] = {}
        for exp, coeff in (terms or {}).items():
            key = tuple(int(e) for e in exp)
            if len(key) != patch.dim or any(e < 0 for e in key):
                raise StructureMismatchError(
                    f"exponent {key} does not fit a patch of dimension {patch.dim}"
                )
            value = clean.get(key, Fraction(0)) + Fraction(coeff)
            clean[key] = value
        self.patch = patch
        self._terms = {k: v for k, v in clean.items() if v != 0}
        self._hash: Optional[int] = None

    @classmethod
    def _make(cls, patch: BasePatch, terms: dict[Exponent, Fraction]) -> "Scalar":
        obj = cls.__new__(cls)
        obj.patch = patch
        obj._terms = {k: v for k, v in terms.items() if v != 0}
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def zero(cls, patch: BasePatch) -> "Scalar":
        return cls._make(patch, {})

    @classmethod
    def constant(cls, patch: BasePatch, value: Number) -> "Scalar":
        return cls._make(patch, {(0,) * patch.dim: Fraction(value)})

    @classmethod
    def one(cls, patch: BasePatch) -> "Scalar":
        return cls.constant(patch, 1)

    @classmethod
    def coordinate(cls, patch: BasePatch, which: Union[int, str]) -> "Scalar":
        index = patch.index(which) if isinstance(which, str) else which
        if not 0 <= index < patch.dim:
            raise IndexRangeError(f"coordinate index {index} out of range for dimension {patch.dim}")
        exp = tuple(1 if k == index else 0 for k in range(patch.dim))
        return cls._make(patch, {exp: Fraction(1)})

    # inspection

    @property
    def terms(self) -> Mapping[Exponent, Fraction]:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(sum(exp) == 0 for exp in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((0,) * self.patch.dim, Fraction(0))

    def term_count(self) -> int:
        return len(self._terms)

    def total_degree(self) -> int:
        return max((sum(exp) for exp in self._terms), default=0)

    # arithmetic

    def _coerce(self, other: object) -> Optional["Scalar"]:
        if isinstance(other, Scalar):
            if other.patch != self.patch:
                raise StructureMismatchError(
                    f"scalars over different patches: {self.patch.coord_names} vs {other.patch.coord_names}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar.constant(self.patch, other)
        return None

    def __add__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        out = dict(self._terms)
        for exp, coeff in rhs._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coeff
        return Scalar._make(self.patch, out)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar._make(self.patch, {exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> "Scalar":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def scale(self, factor: Number) -> "Scalar":
        factor = Fraction(factor)
        if factor == 0:
            return Scalar.zero(self.patch)
        return Scalar._make(self.patch, {exp: c * factor for exp, c in self._terms.items()})

    def __mul__(self, other: object) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        rhs = self._coerce(other)
        out: dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in rhs._terms.items():
                exp = tuple(a + b for a, b in zip(e1, e2))
                out[exp] = out.get(exp, Fraction(0)) + c1 * c2
        return Scalar._make(self.patch, out)

    def __rmul__(self, other: object) -> "Scalar":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, power: int) -> "Scalar":
        if not isinstance(power, int) or power < 0:
            raise ValueError(f"only non-negative integer powers are supported, got {power!r}")
        result = Scalar.one(self.patch)
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    # calculus

    def partial(self, index: int) -> "Scalar":
        if not 0 <= index < self.patch.dim:
            raise IndexRangeError(f"partial derivative index {index} out of range for dimension {self.patch.dim}")
        out: dict[Exponent, Fraction] = {}
        for exp, coeff in self._terms.items():
            power = exp[index]
            if power == 0:
                continue
            lowered = exp[:index] + (power - 1,) + exp[index + 1:]
            out[lowered] = out.get(lowered, Fraction(0)) + coeff * power
        return Scalar._make(self.patch, out)

    def evaluate(self, point: Sequence[Number]) -> Fraction:
        if len(point) != self.patch.dim:
            raise StructureMismatchError(
                f"point has {len(point)} coordinates, patch has dimension {self.patch.dim}"
            )
        values = [Fraction(v) for v in point]
        total = Fraction(0)
        for exp, coeff in self._terms.items():
            term = coeff
            for value, power in zip(values, exp):
                if power:
                    term *= value ** power
            total += term
        return total

    # comparison and rendering

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.patch == other.patch and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.patch, frozenset(self._terms.items())))
        return self._hash

    def _monomial(self, exp: Exponent) -> str:
        parts = []
        for name, power in zip(self.patch.coord_names, exp):
            if power == 1:
                parts.append(name)
            elif power > 1:
                parts.append(f"{name}^{power}")
        return "*".join(parts)

    def render(self) -> str:
        """Graded-lex descending rendering, re-readable by the DSL parser."""
        if not self._terms:
            return "0"
        pieces = []
        for position, exp in enumerate(sorted(self._terms, key=_grlex_key, reverse=True)):
            coeff = self._terms[exp]
            mono = self._monomial(exp)
            magnitude = abs(coeff)
            if mono:
                body = mono if magnitude == 1 else f"{format_rational(magnitude)}*{mono}"
            else:
                body = format_rational(magnitude)
            if position == 0:
                pieces.append(("-" if coeff < 0 else "") + body)
            else:
                pieces.append((" - " if coeff < 0 else " + ") + body)
        return "".join(pieces)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"Scalar({self.render()!r})"


def partial_derivative(p: Scalar, index: int) -> Scalar:
    return p.partial(index)


def evaluate(p: Scalar, point: Sequence[Number]) -> Fraction:
    return p.evaluate(point)


def scalar_sum(patch: BasePatch, values: Iterable[Scalar]) -> Scalar:
    out: dict[Exponent, Fraction] = {}
    for value in values:
        for exp, coeff in value._terms.items():
            out[exp] = out.get(exp, Fraction(0)) + coeff
    return Scalar._make(patch, out)
