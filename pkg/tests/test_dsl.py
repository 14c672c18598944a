from fractions import Fraction

import pytest

from bialgebroid.core.scalar import Scalar
from bialgebroid.dsl.loader import jacobi_file, load_path, load_text, pair_file, to_scalar
from bialgebroid.dsl.parser import parse, parse_expression
from bialgebroid.dsl.render import render_expression, render_file
from bialgebroid.dsl.scanner import tokenize
from bialgebroid.errors import DslError, DslSemanticError, DslSyntaxError

from tests.conftest import FIXTURES, GOLDEN

PARSEABLE = sorted(p for p in FIXTURES.rglob("*.alg") if p.name != "broken_syntax.alg")
ERROR_CASES = sorted((GOLDEN / "errors").glob("*.alg"))


def test_tokenize_positions():
    tokens = tokenize("jacobi j\n  = # comment\n{")
    assert [(t.kind, t.text, t.line, t.column) for t in tokens] == [
        ("IDENT", "jacobi", 1, 1),
        ("IDENT", "j", 1, 8),
        ("EQUAL", "=", 2, 3),
        ("LBRACE", "{", 3, 1),
        ("EOF", "", 3, 2),
    ]


@pytest.mark.parametrize(
    "text, rendered",
    [
        ("x - (y - 1)", "x - (y - 1)"),
        ("(x - y) - 1", "x - y - 1"),
        ("(x + y)^2", "(x + y)^2"),
        ("x * y / 2", "x * y / 2"),
        ("x / (2 * y)", "x / (2 * y)"),
        ("-y", "-1 * y"),
        ("-3^2", "-3^2"),
        ("x * -y", "x * (-1 * y)"),
    ],
)
def test_render_expression(text, rendered):
    expr = parse_expression(text)
    assert render_expression(expr) == rendered
    assert parse_expression(rendered) == expr


def test_to_scalar(plane):
    x, y = Scalar.coordinate(plane, "x"), Scalar.coordinate(plane, "y")
    assert to_scalar(parse_expression("(x + y)^2 - 2*x*y"), plane) == x**2 + y**2
    assert to_scalar(parse_expression("x / 2 + 1/2"), plane) == (x + 1).scale(Fraction(1, 2))
    assert to_scalar(parse_expression("-3^2"), plane) == Scalar.constant(plane, 9)


def test_to_scalar_errors(plane):
    with pytest.raises(DslSemanticError) as excinfo:
        to_scalar(parse_expression("x / y"), plane)
    assert str(excinfo.value) == "1:3: division by a non-constant expression (at '/')"
    with pytest.raises(DslSemanticError) as excinfo:
        to_scalar(parse_expression("x / (1 - 1)"), plane)
    assert excinfo.value.message == "division by zero"
    with pytest.raises(DslSemanticError) as excinfo:
        to_scalar(parse_expression("z"), plane)
    assert excinfo.value.token == "z"


@pytest.mark.parametrize("path", PARSEABLE, ids=lambda p: p.name)
def test_render_is_a_fixed_point(path):
    parsed = parse(path.read_text(encoding="utf-8"))
    rendered = render_file(parsed)
    assert parse(rendered) == parsed
    assert render_file(parse(rendered)) == rendered


def test_golden_valid_file_is_canonical():
    text = (GOLDEN / "valid.alg").read_text(encoding="utf-8")
    assert render_file(parse(text)) == text
    ws = load_text(text)
    assert ws.kind_of("twisted") == "algebroid"
    assert ws.kind_of("id") == "morphism"


@pytest.mark.parametrize("path", ERROR_CASES, ids=lambda p: p.stem)
def test_golden_errors(path):
    expected = path.with_suffix(".err").read_text(encoding="utf-8").rstrip("\n")
    with pytest.raises(DslError) as excinfo:
        load_path(path)
    assert str(excinfo.value) == expected


def test_syntax_and_semantic_errors_are_distinguished():
    with pytest.raises(DslSyntaxError):
        load_path(FIXTURES / "negative" / "broken_syntax.alg")
    with pytest.raises(DslSemanticError):
        load_text("manifold { dim = 1; coords = [x y] }\n")


def test_workspace_lookup(contact):
    ws = load_path(FIXTURES / "contact.alg")
    assert ws.jacobi["contact"].same_as(contact)
    assert ws.lookup("contact", "jacobi", "pair") == "jacobi"
    with pytest.raises(DslSemanticError, match="'contact' is a jacobi, expected pair"):
        ws.lookup("contact", "pair")
    with pytest.raises(DslSemanticError, match="unknown name 'nope'"):
        ws.kind_of("nope")


def test_loader_rejects_mismatched_declarations():
    header = "manifold { dim = 2; coords = [x y] }\n"
    body = (
        "algebroid A {\n  rank = 1;\n  frame = [a];\n  anchor = [[1, 0]];\n}\n"
        "algebroid B {\n  rank = 2;\n  frame = [b c];\n  anchor = [[1, 0], [0, 1]];\n}\n"
        "cocycle a0 on A = [0];\n"
        "cocycle b0 on B = [0, 0];\n"
    )
    with pytest.raises(DslSemanticError, match=r"ranks differ \(1 and 2\)"):
        load_text(header + body + "pair p = (A, a0; B, b0);\n")
    with pytest.raises(DslSemanticError, match="cocycle is declared on 'B', not on 'A'"):
        load_text(header + body + "pair p = (A, b0; B, b0);\n")
    with pytest.raises(DslSemanticError, match="unknown pair"):
        load_text(header + body + "morphism m : p -> p = [[1]];\n")


def test_poisson_fixture_builds_its_pair(poisson_pair, config):
    ws = load_path(FIXTURES / "poisson_plane.alg")
    assert ws.build_pair("plane", config).structurally_equal(poisson_pair)
    assert ws.bivectors["P"][0] == "TM"


def test_emitted_pair_reloads(contact_pair, config):
    text = render_file(pair_file("jet", contact_pair))
    ws = load_text(text)
    assert sorted(ws.algebroids) == ["jet_A", "jet_Adual"]
    assert ws.build_pair("jet", config).structurally_equal(contact_pair)


def test_emitted_jacobi_reloads(contact):
    ws = load_text(render_file(jacobi_file("contact", contact)))
    assert ws.jacobi["contact"].same_as(contact)
