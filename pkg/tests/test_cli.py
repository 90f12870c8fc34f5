import io
import subprocess
import sys
from pathlib import Path

import pytest

from qcmodel import cli
from qcmodel.errors import InputReferenceError, InputSyntaxError
from qcmodel.workspace import Workspace, parse_file, parse_text, serialize, workspaces_equal

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"
A2 = str(HERE / "data" / "a2.qcw")
P1 = str(Path(cli.__file__).parent / "data" / "p1.qcw")


def run(*argv):
    buf = io.StringIO()
    code, _ = cli.run(list(argv), buf)
    return code, buf.getvalue()


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["cohomology", "O(-2)", "--window", "-4..4"], "cohomology_O-2.txt"),
        (["qcheck", "O(3)"], "qcheck_O3.txt"),
        (["ext", "S0", "S1", "--poset", "A2"], "ext_S0_S1.txt"),
    ],
)
def test_golden_reports(argv, golden):
    code, text = run(*argv)
    assert code == 0
    assert text == (GOLDEN / golden).read_text(encoding="ascii")


def test_reports_are_byte_stable():
    argv = ["-f", A2, "triple-verify", "--triple", "Tinj", "--universe", "Z,S0,S1,P0"]
    assert run(*argv) == run(*argv)


def test_entry_point_subprocess():
    proc = subprocess.run([sys.executable, "-m", "qcmodel.cli", "qcheck", "O(3)"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / "qcheck_O3.txt").read_text(encoding="ascii")


@pytest.mark.parametrize(
    "argv,code",
    [
        (["-f", A2, "hom", "P0", "S0"], 0),
        (["-f", A2, "lift", "inc", "quot"], 1),
        (["-f", A2, "factorize", "zS0", "--triple", "Tinj"], 0),
        (["-f", A2, "approx", "S1", "--pair", "injective", "--poset", "A2"], 0),
        (["-f", A2, "pair-check", "--pair", "injective", "--poset", "A2", "--universe", "Z,S0,S1,P0"], 0),
        (["-f", A2, "classify", "idS0", "--triple", "Tinj"], 0),
        (["-f", A2, "homotopic", "idS0", "idS0", "--triple", "Tinj"], 0),
        (["-f", A2, "ho-hom", "S0", "S1", "--triple", "Tinj"], 0),
        (["-f", A2, "tensor", "C", "C"], 0),
        (["-f", A2, "pushout-product", "inc", "inc"], 0),
        (["cech", "O(1)"], 0),
        (["bundle-check", "O(1)"], 0),
        (["-f", P1, "tensor", "O(1)", "O(2)"], 0),
        (["-f", P1, "validate"], 0),
        (["qcheck", "nothing"], 2),
        (["ext", "S0", "S1"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert run(*argv)[0] == code


def test_not_quasicoherent_is_negative(tmp_path):
    src = Path(P1).read_text() + "\nmodule Bad over P1 {\n  at u0: gens 1;\n  at u1: gens 0;\n  at u01: gens 0;\n}\n"
    f = tmp_path / "bad.qcw"
    f.write_text(src)
    code, text = run("-f", str(f), "qcheck", "Bad")
    assert code == 1 and "quasicoherent: no" in text


def test_report_file(tmp_path):
    out = tmp_path / "r.txt"
    code, text = run("qcheck", "O(3)", "--report", str(out))
    assert out.read_text(encoding="ascii") == text


def test_parse_errors_exit_2(tmp_path):
    f = tmp_path / "broken.qcw"
    f.write_text("poset A {\n  elements: a b;\n  relations: a <= ;\n}\n")
    code, text = run("-f", str(f), "validate")
    assert code == 2 and "line: 3" in text


# -- workspace files -------------------------------------------------------------------------------------


def test_empty_file_is_empty_workspace(tmp_path):
    f = tmp_path / "empty.qcw"
    f.write_text("")
    assert len(parse_file(f)) == 0
    assert len(parse_text("# only a comment\n")) == 0


def test_duplicate_name_names_both_sites():
    text = "poset A {\n  elements: a;\n  relations: ;\n}\n\nposet A {\n  elements: b;\n  relations: ;\n}\n"
    with pytest.raises(InputReferenceError) as exc:
        parse_text(text, "dup.qcw")
    msg = str(exc.value)
    assert "dup.qcw:1" in msg and "dup.qcw:6" in msg


def test_unknown_reference():
    with pytest.raises(InputReferenceError):
        parse_text("module M over Nowhere {\n}\n")


def test_syntax_error_has_position():
    with pytest.raises(InputSyntaxError) as exc:
        parse_text("poset {\n")
    assert exc.value.line == 1


@pytest.mark.parametrize("path", [A2, P1])
def test_serialize_round_trip(path):
    ws = parse_file(path)
    again = parse_text(serialize(ws))
    assert workspaces_equal(ws, again)
    assert serialize(again) == serialize(ws)


def test_shipped_p1_example_validates():
    code, text = run("-f", P1, "validate")
    assert code == 0
    ws = parse_file(P1)
    assert isinstance(ws, Workspace) and "O2" in ws
