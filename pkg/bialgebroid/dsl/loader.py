"""Semantic analysis of structure files, and emission of objects back to ASTs.

`load` resolves every name, checks index ranges and arities, and turns
expressions into Scalars over the declared base. Pairs and morphisms are kept
as declarations and only assembled on demand, because assembling a pair runs
the algebroid and cocycle checks.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import NoReturn, Optional, Sequence

from bialgebroid.core.algebroid import Algebroid
from bialgebroid.core.graded import Form, Multivector, flip
from bialgebroid.core.sampling import SampleConfig
from bialgebroid.core.scalar import BasePatch, Scalar
from bialgebroid.dsl.nodes import (
    AlgebroidDecl,
    BinOp,
    BivectorDecl,
    BivectorEntry,
    BracketEntry,
    CocycleDecl,
    Declaration,
    Expr,
    JacobiDecl,
    Manifold,
    MorphismDecl,
    Num,
    PairDecl,
    Pow,
    StructureFile,
    Var,
)
from bialgebroid.dsl.parser import parse, parse_expression
from bialgebroid.errors import DslSemanticError, DslSyntaxError
from bialgebroid.structures.jacobi import JacobiStructure
from bialgebroid.structures.morphism import PairMorphism
from bialgebroid.structures.pair import GenBialgebroidPair, new_pair

logger = logging.getLogger(__name__)

__all__ = [
    "Workspace",
    "load",
    "load_text",
    "load_path",
    "to_scalar",
    "expression_of",
    "algebroid_declaration",
    "jacobi_declaration",
    "jacobi_file",
    "pair_file",
]


def _fail(message: str, pos: tuple[int, int], token: Optional[str] = None) -> NoReturn:
    raise DslSemanticError(message, pos[0], pos[1], token)


def to_scalar(expr: Expr, base: BasePatch) -> Scalar:
    if isinstance(expr, Num):
        return Scalar.constant(base, expr.value)
    if isinstance(expr, Var):
        if expr.name not in base.coord_names:
            _fail("unknown coordinate", expr.pos, expr.name)
        return Scalar.coordinate(base, expr.name)
    if isinstance(expr, Pow):
        return to_scalar(expr.base, base) ** expr.exponent
    left, right = to_scalar(expr.left, base), to_scalar(expr.right, base)
    if expr.op == "+":
        return left + right
    if expr.op == "-":
        return left - right
    if expr.op == "*":
        return left * right
    if not right.is_constant():
        _fail("division by a non-constant expression", expr.pos, expr.op)
    if right.is_zero():
        _fail("division by zero", expr.pos, expr.op)
    return left.scale(1 / Fraction(right.constant_value()))


@dataclass
class Workspace:
    """Every object declared in one structure file, by name."""

    source: StructureFile
    base: BasePatch
    algebroids: dict[str, Algebroid] = field(default_factory=dict)
    cocycles: dict[str, tuple[str, Form]] = field(default_factory=dict)
    bivectors: dict[str, tuple[str, Multivector]] = field(default_factory=dict)
    jacobi: dict[str, JacobiStructure] = field(default_factory=dict)
    pairs: dict[str, PairDecl] = field(default_factory=dict)
    morphisms: dict[str, MorphismDecl] = field(default_factory=dict)

    def kind_of(self, name: str) -> str:
        for kind, table in (
            ("algebroid", self.algebroids),
            ("cocycle", self.cocycles),
            ("bivector", self.bivectors),
            ("jacobi", self.jacobi),
            ("pair", self.pairs),
            ("morphism", self.morphisms),
        ):
            if name in table:
                return kind
        raise DslSemanticError(f"unknown name {name!r}")

    def lookup(self, name: str, *kinds: str) -> str:
        kind = self.kind_of(name)
        if kind not in kinds:
            raise DslSemanticError(f"{name!r} is a {kind}, expected {' or '.join(kinds)}")
        return kind

    def build_pair(self, name: str, config: Optional[SampleConfig] = None) -> GenBialgebroidPair:
        self.lookup(name, "pair")
        decl = self.pairs[name]
        A, Adual = self.algebroids[decl.A], self.algebroids[decl.Adual]
        phi0 = self.cocycles[decl.phi0][1]
        X0 = self.cocycles[decl.X0][1]
        logger.debug("[loader.build_pair] %s = (%s, %s; %s, %s)", name, decl.A, decl.phi0, decl.Adual, decl.X0)
        return new_pair(A, phi0, Adual, flip(X0), config)

    def build_morphism(self, name: str, config: Optional[SampleConfig] = None) -> PairMorphism:
        self.lookup(name, "morphism")
        decl = self.morphisms[name]
        source = self.build_pair(decl.source, config)
        target = source if decl.target == decl.source else self.build_pair(decl.target, config)
        matrix = [[to_scalar(value, self.base) for value in row] for row in decl.matrix]
        return PairMorphism.create(source, target, matrix)


class _Loader:
    def __init__(self, source: StructureFile):
        self.source = source
        self.base = self._manifold(source.manifold)
        self.workspace = Workspace(source=source, base=self.base)
        self.names: set[str] = set()

    def _manifold(self, m: Manifold) -> BasePatch:
        if m.dim != len(m.coords):
            _fail(f"dim = {m.dim} but {len(m.coords)} coordinate(s) declared", m.pos, "manifold")
        for name in m.coords:
            if m.coords.count(name) > 1:
                _fail("duplicate coordinate", m.pos, name)
        return BasePatch(m.coords)

    def run(self) -> Workspace:
        handlers = {
            AlgebroidDecl: self._algebroid,
            CocycleDecl: self._cocycle,
            BivectorDecl: self._bivector,
            JacobiDecl: self._jacobi,
            PairDecl: self._pair,
            MorphismDecl: self._morphism,
        }
        for decl in self.source.declarations:
            if decl.name in self.names:
                _fail("duplicate name", decl.pos, decl.name)
            handlers[type(decl)](decl)
            self.names.add(decl.name)
        logger.debug("[loader.run] %d declaration(s) over %s", len(self.names), list(self.base.coord_names))
        return self.workspace

    def _scalars(self, values: Sequence[Expr], length: int, pos, token: str) -> list[Scalar]:
        if len(values) != length:
            _fail(f"expected {length} component(s), got {len(values)}", pos, token)
        return [to_scalar(value, self.base) for value in values]

    def _index(self, value: int, limit: int, pos, token: str) -> int:
        if not 1 <= value <= limit:
            _fail(f"index {value} out of range 1..{limit}", pos, token)
        return value - 1

    def _algebroid_of(self, name: str, decl: Declaration) -> Algebroid:
        if name not in self.workspace.algebroids:
            _fail("unknown algebroid", decl.pos, name)
        return self.workspace.algebroids[name]

    def _algebroid(self, decl: AlgebroidDecl) -> None:
        if decl.rank != len(decl.frame):
            _fail(f"rank = {decl.rank} but {len(decl.frame)} frame name(s) declared", decl.pos, decl.name)
        for name in decl.frame:
            if decl.frame.count(name) > 1:
                _fail("duplicate frame name", decl.pos, name)
        if len(decl.anchor) != decl.rank or any(len(row) != self.base.dim for row in decl.anchor):
            _fail(f"anchor must be a {decl.rank}x{self.base.dim} matrix", decl.pos, decl.name)
        anchor = [[to_scalar(value, self.base) for value in row] for row in decl.anchor]
        structure: dict[tuple[int, int], list[Scalar]] = {}
        for entry in decl.brackets:
            key = self._bracket_key(entry, decl.rank)
            if key in structure:
                _fail("bracket declared twice", entry.pos, f"[{entry.i},{entry.j}]")
            structure[key] = self._scalars(entry.section, decl.rank, entry.pos, f"[{entry.i},{entry.j}]")
        self.workspace.algebroids[decl.name] = Algebroid.create(self.base, decl.frame, anchor, structure)

    def _bracket_key(self, entry: BracketEntry, rank: int) -> tuple[int, int]:
        token = f"[{entry.i},{entry.j}]"
        i = self._index(entry.i, rank, entry.pos, token)
        j = self._index(entry.j, rank, entry.pos, token)
        if i >= j:
            _fail("bracket indices must be increasing", entry.pos, token)
        return i, j

    def _cocycle(self, decl: CocycleDecl) -> None:
        A = self._algebroid_of(decl.algebroid, decl)
        values = self._scalars(decl.values, A.rank, decl.pos, decl.name)
        self.workspace.cocycles[decl.name] = (decl.algebroid, A.covector(values))

    def _bivector_components(
        self, entries: Sequence[BivectorEntry], rank: int
    ) -> dict[tuple[int, int], Scalar]:
        components: dict[tuple[int, int], Scalar] = {}
        for entry in entries:
            token = f"({entry.i},{entry.j})"
            i = self._index(entry.i, rank, entry.pos, token)
            j = self._index(entry.j, rank, entry.pos, token)
            if i >= j:
                _fail("bivector indices must be increasing", entry.pos, token)
            if (i, j) in components:
                _fail("entry declared twice", entry.pos, token)
            components[(i, j)] = to_scalar(entry.value, self.base)
        return components

    def _bivector(self, decl: BivectorDecl) -> None:
        A = self._algebroid_of(decl.algebroid, decl)
        components = self._bivector_components(decl.entries, A.rank)
        self.workspace.bivectors[decl.name] = (decl.algebroid, Multivector(self.base, A.rank, 2, components))

    def _jacobi(self, decl: JacobiDecl) -> None:
        n = self.base.dim
        Lambda = Multivector(self.base, n, 2, self._bivector_components(decl.Lambda, n))
        E = Multivector.from_list(self.base, n, self._scalars(decl.E, n, decl.pos, decl.name))
        self.workspace.jacobi[decl.name] = JacobiStructure(base=self.base, Lambda=Lambda, E=E)

    def _cocycle_on(self, name: str, algebroid: str, decl: PairDecl) -> None:
        if name not in self.workspace.cocycles:
            _fail("unknown cocycle", decl.pos, name)
        owner = self.workspace.cocycles[name][0]
        if owner != algebroid:
            _fail(f"cocycle is declared on {owner!r}, not on {algebroid!r}", decl.pos, name)

    def _pair(self, decl: PairDecl) -> None:
        A = self._algebroid_of(decl.A, decl)
        Adual = self._algebroid_of(decl.Adual, decl)
        self._cocycle_on(decl.phi0, decl.A, decl)
        self._cocycle_on(decl.X0, decl.Adual, decl)
        if A.rank != Adual.rank:
            _fail(f"ranks differ ({A.rank} and {Adual.rank})", decl.pos, decl.name)
        self.workspace.pairs[decl.name] = decl

    def _pair_rank(self, name: str, decl: MorphismDecl) -> int:
        if name not in self.workspace.pairs:
            _fail("unknown pair", decl.pos, name)
        return self.workspace.algebroids[self.workspace.pairs[name].A].rank

    def _morphism(self, decl: MorphismDecl) -> None:
        source = self._pair_rank(decl.source, decl)
        target = self._pair_rank(decl.target, decl)
        if len(decl.matrix) != target or any(len(row) != source for row in decl.matrix):
            _fail(f"morphism matrix must be {target}x{source}", decl.pos, decl.name)
        for row in decl.matrix:
            for value in row:
                to_scalar(value, self.base)
        self.workspace.morphisms[decl.name] = decl


def load(source: StructureFile) -> Workspace:
    return _Loader(source).run()


def load_text(text: str) -> Workspace:
    return load(parse(text))


def load_path(path: Path) -> Workspace:
    data = Path(path).read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        column = exc.start - data.rfind(b"\n", 0, exc.start)
        raise DslSyntaxError("invalid UTF-8 byte", line, column, f"0x{data[exc.start]:02x}") from None
    return load_text(text)


# emission


def expression_of(value: Scalar) -> Expr:
    return parse_expression(value.render())


def _manifold_of(base: BasePatch) -> Manifold:
    return Manifold(dim=base.dim, coords=base.coord_names)


def _vector_of(values: Sequence[Scalar]) -> tuple[Expr, ...]:
    return tuple(expression_of(value) for value in values)


def _entries_of(P: Multivector) -> tuple[BivectorEntry, ...]:
    return tuple(BivectorEntry(i=i + 1, j=j + 1, value=expression_of(value)) for (i, j), value in P.items())


def algebroid_declaration(name: str, A: Algebroid) -> AlgebroidDecl:
    brackets = tuple(
        BracketEntry(i=i + 1, j=j + 1, section=_vector_of(A.structure[(i, j)].components()))
        for i, j in itertools.combinations(range(A.rank), 2)
        if (i, j) in A.structure
    )
    return AlgebroidDecl(
        name=name,
        rank=A.rank,
        frame=A.frame_names,
        anchor=tuple(_vector_of(row) for row in A.anchor),
        brackets=brackets,
    )


def jacobi_declaration(name: str, J: JacobiStructure) -> JacobiDecl:
    return JacobiDecl(name=name, Lambda=_entries_of(J.Lambda), E=_vector_of(J.E.components()))


def jacobi_file(name: str, J: JacobiStructure) -> StructureFile:
    return StructureFile(manifold=_manifold_of(J.base), declarations=(jacobi_declaration(name, J),))


def pair_file(name: str, p: GenBialgebroidPair) -> StructureFile:
    """A self-contained structure file declaring `p` under `name`."""
    a, ad = f"{name}_A", f"{name}_Adual"
    phi0, x0 = f"{name}_phi0", f"{name}_X0"
    declarations = (
        algebroid_declaration(a, p.A),
        algebroid_declaration(ad, p.Adual),
        CocycleDecl(name=phi0, algebroid=a, values=_vector_of(p.phi0.value.components())),
        CocycleDecl(name=x0, algebroid=ad, values=_vector_of(p.X0.value.components())),
        PairDecl(name=name, A=a, phi0=phi0, Adual=ad, X0=x0),
    )
    return StructureFile(manifold=_manifold_of(p.base), declarations=declarations)
