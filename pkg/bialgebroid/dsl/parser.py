"""Recursive-descent parser for structure files.

Frame, coordinate and bracket indices are 1-based in the file. Lists take
optional commas between identifiers and between bivector entries; expression
lists are comma separated. A leading '-' directly before a number yields a
negative literal, elsewhere it multiplies by -1.
"""
from __future__ import annotations

import logging
from typing import Callable, NoReturn, Optional

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
from bialgebroid.dsl.scanner import Token, tokenize
from bialgebroid.errors import DslSyntaxError

logger = logging.getLogger(__name__)

__all__ = ["Parser", "parse", "parse_expression"]

_DESCRIBE = {
    "NUMBER": "a number",
    "IDENT": "a name",
    "ARROW": "'->'",
    "LBRACE": "'{'",
    "RBRACE": "'}'",
    "LBRACK": "'['",
    "RBRACK": "']'",
    "LPAREN": "'('",
    "RPAREN": "')'",
    "COMMA": "','",
    "SEMICOLON": "';'",
    "COLON": "':'",
    "EQUAL": "'='",
    "EOF": "end of file",
}


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def peek(self, kind: str, text: Optional[str] = None) -> bool:
        return self.token.kind == kind and (text is None or self.token.text == text)

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        if self.peek(kind, text):
            token = self.token
            self.index += 1
            return token
        return None

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        token = self.accept(kind, text)
        if token is None:
            wanted = f"'{text}'" if text is not None else _DESCRIBE.get(kind, kind)
            self.error(f"expected {wanted}")
        return token

    def keyword(self, text: str) -> Token:
        return self.expect("IDENT", text)

    def error(self, message: str, token: Optional[Token] = None) -> NoReturn:
        token = token or self.token
        if token.kind == "EOF":
            raise DslSyntaxError(f"{message}, found end of file", token.line, token.column)
        raise DslSyntaxError(message, token.line, token.column, token.text)

    # <FILE> -> <MANIFOLD> { <DECLARATION> }* EOF
    def parse_file(self) -> StructureFile:
        manifold = self._manifold()
        declarations: list[Declaration] = []
        while not self.peek("EOF"):
            declarations.append(self._declaration())
        logger.debug("[parser.parse_file] %d declaration(s)", len(declarations))
        return StructureFile(manifold=manifold, declarations=tuple(declarations))

    # <MANIFOLD> -> 'manifold' '{' 'dim' '=' NUMBER ';' 'coords' '=' <NAMES> [ ';' ] '}'
    def _manifold(self) -> Manifold:
        start = self.keyword("manifold")
        self.expect("LBRACE")
        self.keyword("dim")
        self.expect("EQUAL")
        dim = self._natural()
        self.expect("SEMICOLON")
        self.keyword("coords")
        self.expect("EQUAL")
        coords = self._names()
        self.accept("SEMICOLON")
        self.expect("RBRACE")
        return Manifold(dim=dim, coords=coords, pos=(start.line, start.column))

    # <DECLARATION> -> <ALGEBROID> | <COCYCLE> | <BIVECTOR> | <JACOBI> | <PAIR> | <MORPHISM>
    def _declaration(self) -> Declaration:
        rules: dict[str, Callable[[], Declaration]] = {
            "algebroid": self._algebroid,
            "cocycle": self._cocycle,
            "bivector": self._bivector,
            "jacobi": self._jacobi,
            "pair": self._pair,
            "morphism": self._morphism,
        }
        if self.peek("IDENT") and self.token.text in rules:
            return rules[self.token.text]()
        self.error("expected a declaration")

    # <ALGEBROID> -> 'algebroid' IDENT '{' 'rank' '=' NUMBER ';' 'frame' '=' <NAMES> ';'
    #                'anchor' '=' <MATRIX> ';' { <BRACKET> }* '}'
    def _algebroid(self) -> AlgebroidDecl:
        start = self.keyword("algebroid")
        name = self.expect("IDENT").text
        self.expect("LBRACE")
        self.keyword("rank")
        self.expect("EQUAL")
        rank = self._natural()
        self.expect("SEMICOLON")
        self.keyword("frame")
        self.expect("EQUAL")
        frame = self._names()
        self.expect("SEMICOLON")
        self.keyword("anchor")
        self.expect("EQUAL")
        anchor = self._matrix()
        self.expect("SEMICOLON")
        brackets = []
        while self.peek("IDENT", "bracket"):
            brackets.append(self._bracket())
        self.expect("RBRACE")
        return AlgebroidDecl(
            name=name,
            rank=rank,
            frame=frame,
            anchor=anchor,
            brackets=tuple(brackets),
            pos=(start.line, start.column),
        )

    # <BRACKET> -> 'bracket' '[' NUMBER ',' NUMBER ']' '=' <VECTOR> ';'
    def _bracket(self) -> BracketEntry:
        start = self.keyword("bracket")
        self.expect("LBRACK")
        i = self._natural()
        self.expect("COMMA")
        j = self._natural()
        self.expect("RBRACK")
        self.expect("EQUAL")
        section = self._vector()
        self.expect("SEMICOLON")
        return BracketEntry(i=i, j=j, section=section, pos=(start.line, start.column))

    # <COCYCLE> -> 'cocycle' IDENT 'on' IDENT '=' <VECTOR> ';'
    def _cocycle(self) -> CocycleDecl:
        start = self.keyword("cocycle")
        name = self.expect("IDENT").text
        self.keyword("on")
        algebroid = self.expect("IDENT").text
        self.expect("EQUAL")
        values = self._vector()
        self.expect("SEMICOLON")
        return CocycleDecl(name=name, algebroid=algebroid, values=values, pos=(start.line, start.column))

    # <BIVECTOR> -> 'bivector' IDENT 'on' IDENT '=' <ENTRIES> ';'
    def _bivector(self) -> BivectorDecl:
        start = self.keyword("bivector")
        name = self.expect("IDENT").text
        self.keyword("on")
        algebroid = self.expect("IDENT").text
        self.expect("EQUAL")
        entries = self._entries()
        self.expect("SEMICOLON")
        return BivectorDecl(name=name, algebroid=algebroid, entries=entries, pos=(start.line, start.column))

    # <ENTRIES> -> '{' { '(' NUMBER ',' NUMBER ')' ':' <EXPR> [ ',' ] }* '}'
    def _entries(self) -> tuple[BivectorEntry, ...]:
        self.expect("LBRACE")
        entries = []
        while not self.accept("RBRACE"):
            start = self.expect("LPAREN")
            i = self._natural()
            self.expect("COMMA")
            j = self._natural()
            self.expect("RPAREN")
            self.expect("COLON")
            entries.append(BivectorEntry(i=i, j=j, value=self._expression(), pos=(start.line, start.column)))
            self.accept("COMMA")
        return tuple(entries)

    # <JACOBI> -> 'jacobi' IDENT '=' '{' 'Lambda' ':' <ENTRIES> ';' 'E' ':' <VECTOR> [ ';' ] '}' ';'
    def _jacobi(self) -> JacobiDecl:
        start = self.keyword("jacobi")
        name = self.expect("IDENT").text
        self.expect("EQUAL")
        self.expect("LBRACE")
        self.keyword("Lambda")
        self.expect("COLON")
        Lambda = self._entries()
        self.expect("SEMICOLON")
        self.keyword("E")
        self.expect("COLON")
        E = self._vector()
        self.accept("SEMICOLON")
        self.expect("RBRACE")
        self.expect("SEMICOLON")
        return JacobiDecl(name=name, Lambda=Lambda, E=E, pos=(start.line, start.column))

    # <PAIR> -> 'pair' IDENT '=' '(' IDENT ',' IDENT ';' IDENT ',' IDENT ')' ';'
    def _pair(self) -> PairDecl:
        start = self.keyword("pair")
        name = self.expect("IDENT").text
        self.expect("EQUAL")
        self.expect("LPAREN")
        A = self.expect("IDENT").text
        self.expect("COMMA")
        phi0 = self.expect("IDENT").text
        self.expect("SEMICOLON")
        Adual = self.expect("IDENT").text
        self.expect("COMMA")
        X0 = self.expect("IDENT").text
        self.expect("RPAREN")
        self.expect("SEMICOLON")
        return PairDecl(name=name, A=A, phi0=phi0, Adual=Adual, X0=X0, pos=(start.line, start.column))

    # <MORPHISM> -> 'morphism' IDENT ':' IDENT '->' IDENT '=' <MATRIX> ';'
    def _morphism(self) -> MorphismDecl:
        start = self.keyword("morphism")
        name = self.expect("IDENT").text
        self.expect("COLON")
        source = self.expect("IDENT").text
        self.expect("ARROW")
        target = self.expect("IDENT").text
        self.expect("EQUAL")
        matrix = self._matrix()
        self.expect("SEMICOLON")
        return MorphismDecl(
            name=name, source=source, target=target, matrix=matrix, pos=(start.line, start.column)
        )

    # <NAMES> -> '[' { IDENT [ ',' ] }* ']'
    def _names(self) -> tuple[str, ...]:
        self.expect("LBRACK")
        names = []
        while not self.accept("RBRACK"):
            names.append(self.expect("IDENT").text)
            self.accept("COMMA")
        return tuple(names)

    # <MATRIX> -> '[' { <VECTOR> [ ',' ] }* ']'
    def _matrix(self) -> tuple[tuple[Expr, ...], ...]:
        self.expect("LBRACK")
        rows = []
        while not self.accept("RBRACK"):
            rows.append(self._vector())
            self.accept("COMMA")
        return tuple(rows)

    # <VECTOR> -> '[' [ <EXPR> { ',' <EXPR> }* [ ',' ] ] ']'
    def _vector(self) -> tuple[Expr, ...]:
        self.expect("LBRACK")
        values = []
        while not self.accept("RBRACK"):
            values.append(self._expression())
            if not self.accept("COMMA"):
                self.expect("RBRACK")
                break
        return tuple(values)

    def _natural(self) -> int:
        return int(self.expect("NUMBER").text)

    # <EXPR> -> <TERM> { ( '+' | '-' ) <TERM> }*
    def _expression(self) -> Expr:
        expr = self._term()
        while self.peek("PLUS") or self.peek("MINUS"):
            op = self.token
            self.index += 1
            expr = BinOp(op.text, expr, self._term(), pos=(op.line, op.column))
        return expr

    # <TERM> -> <FACTOR> { ( '*' | '/' ) <FACTOR> }*
    def _term(self) -> Expr:
        expr = self._factor()
        while self.peek("STAR") or self.peek("SLASH"):
            op = self.token
            self.index += 1
            divisor_token = self.token
            right = self._factor()
            if op.kind == "SLASH" and isinstance(right, Num) and right.value == 0:
                self.error("division by zero", divisor_token)
            expr = BinOp(op.text, expr, right, pos=(op.line, op.column))
        return expr

    # <FACTOR> -> '-' NUMBER [ '^' NUMBER ] | '-' <FACTOR> | <POWER>
    def _factor(self) -> Expr:
        minus = self.accept("MINUS")
        if minus is None:
            return self._power()
        if self.peek("NUMBER"):
            number = self.expect("NUMBER")
            return self._exponent(Num(-int(number.text), pos=(minus.line, minus.column)))
        return BinOp("*", Num(-1, pos=(minus.line, minus.column)), self._factor(), pos=(minus.line, minus.column))

    # <POWER> -> <ATOM> [ '^' NUMBER ]
    def _power(self) -> Expr:
        return self._exponent(self._atom())

    def _exponent(self, base: Expr) -> Expr:
        caret = self.accept("CARET")
        if caret is None:
            return base
        if not self.peek("NUMBER"):
            self.error("missing exponent after '^'", caret)
        return Pow(base, int(self.expect("NUMBER").text), pos=(caret.line, caret.column))

    # <ATOM> -> NUMBER | IDENT | '(' <EXPR> ')'
    def _atom(self) -> Expr:
        token = self.token
        if self.accept("NUMBER"):
            return Num(int(token.text), pos=(token.line, token.column))
        if self.accept("IDENT"):
            return Var(token.text, pos=(token.line, token.column))
        if self.accept("LPAREN"):
            expr = self._expression()
            self.expect("RPAREN")
            return expr
        self.error("expected an expression")


def parse(text: str) -> StructureFile:
    return Parser(text).parse_file()


def parse_expression(text: str) -> Expr:
    parser = Parser(text)
    expr = parser._expression()
    parser.expect("EOF")
    return expr
