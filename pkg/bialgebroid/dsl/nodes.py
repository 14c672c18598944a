"""AST of structure files. Source positions never take part in equality."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

__all__ = [
    "Num",
    "Var",
    "BinOp",
    "Pow",
    "Expr",
    "Manifold",
    "BracketEntry",
    "AlgebroidDecl",
    "CocycleDecl",
    "BivectorEntry",
    "BivectorDecl",
    "JacobiDecl",
    "PairDecl",
    "MorphismDecl",
    "Declaration",
    "StructureFile",
]

Position = tuple[int, int]


def _pos():
    return field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Num:
    value: int
    pos: Position = _pos()


@dataclass(frozen=True)
class Var:
    name: str
    pos: Position = _pos()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Position = _pos()


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int
    pos: Position = _pos()


Expr = Union[Num, Var, BinOp, Pow]


@dataclass(frozen=True)
class Manifold:
    dim: int
    coords: tuple[str, ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class BracketEntry:
    i: int
    j: int
    section: tuple[Expr, ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class AlgebroidDecl:
    name: str
    rank: int
    frame: tuple[str, ...]
    anchor: tuple[tuple[Expr, ...], ...]
    brackets: tuple[BracketEntry, ...] = ()
    pos: Position = _pos()


@dataclass(frozen=True)
class CocycleDecl:
    name: str
    algebroid: str
    values: tuple[Expr, ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class BivectorEntry:
    i: int
    j: int
    value: Expr
    pos: Position = _pos()


@dataclass(frozen=True)
class BivectorDecl:
    name: str
    algebroid: str
    entries: tuple[BivectorEntry, ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class JacobiDecl:
    name: str
    Lambda: tuple[BivectorEntry, ...]
    E: tuple[Expr, ...]
    pos: Position = _pos()


@dataclass(frozen=True)
class PairDecl:
    name: str
    A: str
    phi0: str
    Adual: str
    X0: str
    pos: Position = _pos()


@dataclass(frozen=True)
class MorphismDecl:
    name: str
    source: str
    target: str
    matrix: tuple[tuple[Expr, ...], ...]
    pos: Position = _pos()


Declaration = Union[AlgebroidDecl, CocycleDecl, BivectorDecl, JacobiDecl, PairDecl, MorphismDecl]


@dataclass(frozen=True)
class StructureFile:
    manifold: Manifold
    declarations: tuple[Declaration, ...] = ()
