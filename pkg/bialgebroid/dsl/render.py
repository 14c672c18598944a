"""Render ASTs back to structure-file text; parse(render(f)) == f."""
from __future__ import annotations

from bialgebroid.dsl.nodes import (
    AlgebroidDecl,
    BinOp,
    BivectorDecl,
    BivectorEntry,
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

__all__ = ["render_expression", "render_file"]

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def render_expression(expr: Expr) -> str:
    if isinstance(expr, Num):
        return str(expr.value)
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Pow):
        base = render_expression(expr.base)
        if isinstance(expr.base, (BinOp, Pow)):
            base = f"({base})"
        return f"{base}^{expr.exponent}"
    level = _PRECEDENCE[expr.op]
    left = render_expression(expr.left)
    if isinstance(expr.left, BinOp) and _PRECEDENCE[expr.left.op] < level:
        left = f"({left})"
    right = render_expression(expr.right)
    if isinstance(expr.right, BinOp) and _PRECEDENCE[expr.right.op] <= level:
        right = f"({right})"
    return f"{left} {expr.op} {right}"


def _vector(values) -> str:
    return "[" + ", ".join(render_expression(v) for v in values) + "]"


def _matrix(rows) -> str:
    return "[" + ", ".join(_vector(row) for row in rows) + "]"


def _entries(entries: tuple[BivectorEntry, ...]) -> str:
    body = ", ".join(f"({e.i},{e.j}): {render_expression(e.value)}" for e in entries)
    return "{ " + body + " }" if body else "{ }"


def _manifold(m: Manifold) -> str:
    return f"manifold {{ dim = {m.dim}; coords = [{' '.join(m.coords)}] }}"


def _declaration(decl: Declaration) -> str:
    if isinstance(decl, AlgebroidDecl):
        lines = [
            f"algebroid {decl.name} {{",
            f"  rank = {decl.rank};",
            f"  frame = [{' '.join(decl.frame)}];",
            f"  anchor = {_matrix(decl.anchor)};",
        ]
        lines += [f"  bracket[{b.i},{b.j}] = {_vector(b.section)};" for b in decl.brackets]
        lines.append("}")
        return "\n".join(lines)
    if isinstance(decl, CocycleDecl):
        return f"cocycle {decl.name} on {decl.algebroid} = {_vector(decl.values)};"
    if isinstance(decl, BivectorDecl):
        return f"bivector {decl.name} on {decl.algebroid} = {_entries(decl.entries)};"
    if isinstance(decl, JacobiDecl):
        return f"jacobi {decl.name} = {{ Lambda: {_entries(decl.Lambda)}; E: {_vector(decl.E)} }};"
    if isinstance(decl, PairDecl):
        return f"pair {decl.name} = ({decl.A}, {decl.phi0}; {decl.Adual}, {decl.X0});"
    if isinstance(decl, MorphismDecl):
        return f"morphism {decl.name} : {decl.source} -> {decl.target} = {_matrix(decl.matrix)};"
    raise TypeError(f"cannot render {type(decl).__name__}")


def render_file(f: StructureFile) -> str:
    blocks = [_manifold(f.manifold)] + [_declaration(d) for d in f.declarations]
    return "\n\n".join(blocks) + "\n"
