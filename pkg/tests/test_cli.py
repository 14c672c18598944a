import json

import pytest

from bialgebroid.cli.commands import COMMANDS
from bialgebroid.core.sampling import SampleConfig
from bialgebroid.errors import StructureMismatchError
from bialgebroid.main import build_parser, main, output_format, sample_config

from tests.conftest import FIXTURES

QUICK = ["--trials", "4"]


def run(capsys, *argv):
    code = main([*QUICK, *argv])
    return code, capsys.readouterr()


@pytest.mark.parametrize(
    "argv",
    [
        ("validate", "poisson_plane.alg"),
        ("check-pair", "poisson_plane.alg", "plane"),
        ("dualize", "poisson_plane.alg", "plane"),
        ("dualize", "contact.alg", "contact"),
        ("jacobi", "z_twist.alg", "twist"),
        ("induce", "poisson_plane.alg", "plane"),
        ("triangular", "lie_point.alg", "g", "phi", "P"),
        ("jacobi", "contact.alg", "contact"),
        ("morphism", "contact.alg", "contact"),
    ],
)
def test_passing_commands(capsys, argv):
    command, fixture, *names = argv
    code, out = run(capsys, command, str(FIXTURES / fixture), *names)
    assert code == 0, out.out
    assert out.out.rstrip().endswith("PASS")


@pytest.mark.parametrize(
    "argv, failing",
    [
        (("validate", "negative/broken_jacobi.alg"), "h.algebroid.jacobi.frames"),
        (("validate", "negative/noncocycle.alg"), "phi.cocycle.closed"),
        (("check-pair", "negative/corrupted_pair.alg", "plane"), "pair.cocycles.anchors"),
        (("morphism", "negative/bad_morphism.alg", "bad"), "morphism.anchor"),
        (("triangular", "negative/non_mc.alg", "TM", "zero", "P"), "triangular.maurer_cartan"),
        (("jacobi", "negative/bad_jacobi.alg", "bad"), "bad.jacobi.lambda_lambda"),
    ],
)
def test_failing_commands(capsys, argv, failing):
    command, fixture, *names = argv
    code, out = run(capsys, "--format", "json", command, str(FIXTURES / fixture), *names)
    assert code == 1
    report = json.loads(out.out)
    statuses = {check["name"]: check["status"] for check in report["checks"]}
    assert statuses[failing] == "fail"
    failed = next(check for check in report["checks"] if check["name"] == failing)
    assert failed["counterexample"]["residual"]


def test_non_mc_residual_is_reported(capsys):
    code, out = run(capsys, "triangular", str(FIXTURES / "negative" / "non_mc.alg"), "TM", "zero", "P")
    assert code == 1
    assert "residual = -2 * e[1,2,3]" in out.out
    assert out.out.rstrip().endswith("FAIL")


def test_json_output_is_deterministic(capsys):
    argv = ("--format", "json", "--seed", "7", "jacobi", str(FIXTURES / "contact.alg"), "contact")
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first.out == second.out
    report = json.loads(first.out)
    assert report["command"] == "jacobi"
    assert report["seed"] == 7
    assert "contact_jet" in report["artifacts"]


def test_induce_prints_the_structure(capsys):
    code, out = run(capsys, "induce", str(FIXTURES / "contact.alg"), "contact")
    assert code == 0
    assert "--- Lambda\ne[1,2] - y * e[2,3]\n" in out.out
    assert "--- E\ne[3]\n" in out.out


def test_output_file_reloads(capsys, tmp_path):
    target = tmp_path / "dual.alg"
    code, _ = run(capsys, "--output", str(target), "dualize", str(FIXTURES / "poisson_plane.alg"), "plane")
    assert code == 0
    code, out = run(capsys, "check-pair", str(target), "plane_dual")
    assert code == 0, out.out


def test_dualize_accepts_a_jacobi_name(capsys, tmp_path):
    target = tmp_path / "contact_dual.alg"
    code, out = run(capsys, "--output", str(target), "dualize", str(FIXTURES / "contact.alg"), "contact")
    assert code == 0, out.out
    assert "--- contact_dual" in out.out
    code, out = run(capsys, "check-pair", str(target), "contact_dual")
    assert code == 0, out.out


def test_input_errors_exit_with_two(capsys, tmp_path):
    code, out = run(capsys, "validate", str(FIXTURES / "negative" / "broken_syntax.alg"))
    assert code == 2
    assert out.err.strip().endswith("broken_syntax.alg:5:3: expected ';' (at 'frame')")

    code, out = run(capsys, "check-pair", str(FIXTURES / "poisson_plane.alg"), "nope")
    assert code == 2
    assert "unknown name 'nope'" in out.err

    code, out = run(capsys, "validate", str(tmp_path / "missing.alg"))
    assert code == 2
    assert out.err.startswith("error: cannot read")


def test_invalid_sampling_flags(capsys):
    assert main(["--trials", "0", "validate", str(FIXTURES / "contact.alg")]) == 2
    assert "invalid sampling parameter trials" in capsys.readouterr().err


def test_environment_defaults(monkeypatch):
    monkeypatch.setenv("BIALGEBROID_SEED", "0x10")
    monkeypatch.setenv("BIALGEBROID_TRIALS", "5")
    monkeypatch.delenv("BIALGEBROID_DEGREE", raising=False)
    monkeypatch.delenv("BIALGEBROID_FORMAT", raising=False)
    args = build_parser().parse_args(["validate", "x.alg"])
    assert sample_config(args) == SampleConfig(seed=16, max_degree=2, trials=5)
    assert output_format(args) == "text"
    args = build_parser().parse_args(["--trials", "3", "--format", "json", "validate", "x.alg"])
    assert sample_config(args).trials == 3
    assert output_format(args) == "json"


@pytest.mark.parametrize(
    "variable, value",
    [
        ("BIALGEBROID_SEED", "seven"),
        ("BIALGEBROID_TRIALS", "many"),
        ("BIALGEBROID_DEGREE", "9"),
        ("BIALGEBROID_FORMAT", "xml"),
    ],
)
def test_invalid_environment_exits_with_two(capsys, monkeypatch, variable, value):
    monkeypatch.setenv(variable, value)
    assert main(["validate", str(FIXTURES / "contact.alg")]) == 2
    assert capsys.readouterr().err.startswith("error: ")


def test_undecodable_file_exits_with_two(capsys, tmp_path):
    target = tmp_path / "bad.alg"
    target.write_bytes(b"manifold { dim = 0; coords = [] }\n\xff\xfe\n")
    code, out = run(capsys, "validate", str(target))
    assert code == 2
    assert out.err.strip() == f"{target}:2:1: invalid UTF-8 byte (at '0xff')"


def test_library_errors_exit_with_two(capsys, monkeypatch):
    def refuse(ws, config):
        raise StructureMismatchError("A (rank 2) and its dual (rank 3) must share base and rank")

    monkeypatch.setitem(COMMANDS, "validate", (refuse, ()))
    code, out = run(capsys, "validate", str(FIXTURES / "contact.alg"))
    assert code == 2
    assert out.err.strip() == "error: validate: A (rank 2) and its dual (rank 3) must share base and rank"
