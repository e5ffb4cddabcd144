import numpy as np
import pytest

from convcodes import cli, field_create
from convcodes import io as cio
from convcodes.channels import ERASED
from convcodes.poly import Poly
from convcodes.sysrep import iso_from_code

EX1_TEXT = """field 2 1
params 3 2
generator
1 ; 1 ; 0 1
0 0 1 ; 1 ; 1 1
"""


@pytest.fixture
def ex1_file(tmp_path):
    p = tmp_path / "ex1.ccode"
    p.write_text(EX1_TEXT)
    return p


def test_code_round_trip(ex1, mdp7):
    for code in (ex1, mdp7):
        assert cio.parse_code(cio.format_code(code)) == code
        assert cio.parse_code(cio.format_code(code, "paritycheck")) == code


def test_code_header_is_comment(ex1):
    text = cio.format_code(ex1, header=["made by hand"])
    assert text.startswith("# made by hand\n")
    assert cio.parse_code(text) == ex1


def test_extension_field_round_trip():
    F = field_create(2, 4)
    assert cio.parse_field(cio.format_field(F)).modulus == F.modulus


@pytest.mark.parametrize("text", [
    "",
    "field 2 1\nparams 3\ngenerator\n1 ; 1 ; 1\n",
    "field 2 1\nparams 3 1\nmatrix\n1 ; 1 ; 1\n",
    "field 2 1\nparams 3 1\ngenerator\n1 ; 1\n",
    "field 2 1\nparams 3 1\ngenerator\n1 ; 2 ; 1\n",
    "field 4 1\nparams 2 1\ngenerator\n1 ; 1\n",
    "field 2 1\nparams 2 1\ngenerator\n1 ; x\n",
    "field 2 1\nparams 2 1\ngenerator\n1 ; 1\n1 ; 0\n",
])
def test_malformed_code(text):
    with pytest.raises(cio.FormatError):
        cio.parse_code(text)


def test_iso_round_trip(mdp7):
    sys = iso_from_code(mdp7)
    back = cio.parse_iso(cio.format_iso(sys))
    for name in "ABCD":
        assert (getattr(back, name) == getattr(sys, name)).all()
    assert back.coords == sys.coords


def test_stream_round_trip():
    arr = np.array([[1, ERASED], [0, 6]])
    assert (cio.parse_stream(cio.format_stream(arr), 2, field_create(7)) == arr).all()
    with pytest.raises(cio.FormatError):
        cio.parse_stream("1 2\n3\n")
    with pytest.raises(cio.FormatError):
        cio.parse_stream("1 9\n", 2, field_create(7))


def test_report_round_trip():
    text = cio.format_report({"ok": True, "d": 3, "list": [1, 2]})
    assert cio.parse_report(text) == {"ok": "true", "d": "3", "list": "1 2"}


# -- command line


def test_analyze_free_distance(ex1_file, capsys):
    assert cli.main(["analyze", str(ex1_file), "--free-distance"]) == 0
    rep = cio.parse_report(capsys.readouterr().out)
    assert rep["free_distance"] == "3"
    assert rep["n"] == "3" and rep["k"] == "2" and rep["degree"] == "3"


def test_analyze_strict_fails_on_non_mdp(ex1_file, capsys):
    assert cli.main(["analyze", str(ex1_file), "--mdp", "--strict"]) == 1
    assert cio.parse_report(capsys.readouterr().out)["mdp"] == "false"


def test_encode_zero_message(ex1_file, capsys):
    assert cli.main(["encode", str(ex1_file), "0 ; 0"]) == 0
    out = cio.parse_stream(capsys.readouterr().out)
    assert not out.any()


def test_encode_then_decode(tmp_path, capsys):
    code_file = tmp_path / "c.ccode"
    assert cli.main(["construct", "complete-binomial", "--n", "2", "--k", "1", "--delta", "1",
                     "-o", str(code_file)]) == 0
    code = cio.read_code(code_file)
    assert code.params == (2, 1, 1)
    cw = tmp_path / "cw.txt"
    assert cli.main(["encode", str(code_file), "3 1 4 1 5", "-o", str(cw)]) == 0
    erased = tmp_path / "w.txt"
    assert cli.main(["channel", "erase", str(cw), "--pattern", "1:0,2:1", "-o", str(erased)]) == 0
    assert (cio.read_stream(erased) == ERASED).sum() == 2
    out = tmp_path / "out.txt"
    rep = tmp_path / "rep.txt"
    assert cli.main(["decode-erasure", str(code_file), str(erased), "-o", str(out),
                     "--report", str(rep)]) == 0
    assert (cio.read_stream(out) == cio.read_stream(cw)).all()
    assert cio.parse_report(rep.read_text())["status"] == "complete"


def test_realize_codeify(ex1_file, tmp_path, ex1):
    iso = tmp_path / "ex1.iso"
    back = tmp_path / "back.ccode"
    assert cli.main(["realize", str(ex1_file), "-o", str(iso)]) == 0
    assert cli.main(["codeify", str(iso), "-o", str(back)]) == 0
    assert cio.read_code(back) == ex1


def test_decode_viterbi(ex1_file, tmp_path, ex1, capsys):
    F = ex1.field
    from convcodes.decoders import codeword_array
    c = codeword_array(ex1, [Poly(F, [1, 1]), Poly(F, [0, 1])])
    r = c.copy()
    r[0, 2] ^= 1
    rf = tmp_path / "r.txt"
    cio.write_stream(rf, r)
    assert cli.main(["decode-viterbi", str(ex1_file), str(rf)]) == 0
    out = cio.parse_stream(capsys.readouterr().out)
    assert (out[:len(c)] == c).all()


def test_simulate_deterministic(capsys):
    args = ["simulate", "--recipe", "complete-binomial", "--n", "2", "--k", "1", "--delta", "1",
            "--length", "30", "--rate", "0.1", "--seed", "7"]
    cli.main(args)
    first = capsys.readouterr().out
    cli.main(args)
    assert capsys.readouterr().out == first
    assert "seed: 7" in first


def test_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.ccode"
    bad.write_text("field 2 1\nparams 2\n")
    assert cli.main(["analyze", str(bad)]) == 2
    assert cli.main(["analyze", str(tmp_path / "missing.ccode")]) == 2
    assert cli.main(["no-such-command"]) == 2
    assert cli.main(["construct", "justesen", "--n", "9", "--p", "3"]) == 1
