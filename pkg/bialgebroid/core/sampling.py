"""Seeded sampling of polynomial test data.

Every check draws from its own SplitMix64 stream, keyed by the run seed and
the check label, so the sample stream of one check never depends on which
other checks ran before it.
"""
from __future__ import annotations

import hashlib
import itertools
from fractions import Fraction

from pydantic import BaseModel, Field, field_validator

from bialgebroid.core.graded import Form, Multivector
from bialgebroid.core.scalar import BasePatch, Scalar

MASK64 = (1 << 64) - 1

__all__ = ["SampleConfig", "SplitMix64", "Sampler", "derive_seed"]


class SampleConfig(BaseModel):
    """How identities quantified over all sections are sampled."""

    seed: int = 0
    max_degree: int = Field(default=2, ge=0, le=6)
    trials: int = Field(default=32, ge=1)

    @field_validator("seed", mode="before")
    @classmethod
    def _parse_seed(cls, value):
        # environment values arrive as text and may be hex
        if isinstance(value, str):
            return int(value.strip(), 0)
        return value

    @field_validator("seed")
    @classmethod
    def _reduce_seed(cls, value: int) -> int:
        return value & MASK64


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound)."""
        return self.next() % bound

    def choice(self, items):
        return items[self.below(len(items))]


def derive_seed(seed: int, label: str) -> int:
    digest = hashlib.sha256(f"{seed}:{label}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


_COEFFICIENTS = (-3, -2, -1, 1, 2, 3)


class Sampler:
    """Random scalars, sections and forms over one patch and frame rank."""

    def __init__(self, config: SampleConfig, label: str, patch: BasePatch, rank: int = 0):
        self.config = config
        self.label = label
        self.patch = patch
        self.rank = rank
        self.rng = SplitMix64(derive_seed(config.seed, label))
        self._monomials = [
            exp
            for exp in itertools.product(range(config.max_degree + 1), repeat=patch.dim)
            if sum(exp) <= config.max_degree
        ]
        self._section_count = 0

    def coefficient(self) -> Fraction:
        value = Fraction(self.rng.choice(_COEFFICIENTS))
        if self.rng.below(4) == 0:
            value /= 2
        return value

    def scalar(self) -> Scalar:
        terms: dict[tuple[int, ...], Fraction] = {}
        for _ in range(1 + self.rng.below(3)):
            exp = self.rng.choice(self._monomials)
            terms[exp] = terms.get(exp, Fraction(0)) + self.coefficient()
        return Scalar(self.patch, terms)

    def _degree_one(self, cls):
        # alternate single-slot f*e_i with dense sections
        self._section_count += 1
        if self._section_count % 2:
            index = self.rng.below(self.rank)
            return cls.basis(self.patch, self.rank, (index,), self.scalar())
        return cls.from_list(self.patch, self.rank, [self.scalar() for _ in range(self.rank)])

    def section(self) -> Multivector:
        return self._degree_one(Multivector)

    def covector(self) -> Form:
        return self._degree_one(Form)

    def _graded(self, cls, degree: int):
        if degree == 0:
            return cls.scalar(self.patch, self.rank, self.scalar())
        if degree > self.rank:
            return cls.zero(self.patch, self.rank, degree)
        out = self._degree_one(cls)
        for _ in range(degree - 1):
            out = out.wedge(self._degree_one(cls))
        # plus one non-decomposable-friendly frame term so the sum is rarely zero
        subsets = list(itertools.combinations(range(self.rank), degree))
        return out + cls.basis(self.patch, self.rank, self.rng.choice(subsets), self.scalar())

    def multivector(self, degree: int) -> Multivector:
        return self._graded(Multivector, degree)

    def form(self, degree: int) -> Form:
        return self._graded(Form, degree)
