from __future__ import annotations

import json
import xml.etree.ElementTree as ET

import pytest

from lensseq.cli import EXIT_INPUT, EXIT_OK, EXIT_RENDER, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, terms",
    [
        (["--seed", "3,1,3", "--forward", "5"], "3 1 3 33 451 6273 87363 1216801"),
        (["--seed", "2,1,2", "--forward", "3"], "2 1 2 10 65 442"),
        (["--symbol", "^3(1,1)^3", "--forward", "4"], "2 1 2 10 65 442 3026"),
        (["--label", "[0,1;4]", "--forward", "3"], "0 1 3 6 10 15"),
        (["--seed=-1,3,15", "--forward", "2"], "-1 3 15 35 63"),
        (["--seed", "1/2,1,2", "--forward", "1"], "1/2 1 2 4"),
    ],
)
def test_gen_terms(capsys, argv, terms):
    code, out, _ = run(capsys, "gen", *argv)
    assert code == EXIT_OK
    assert out.splitlines()[-1] == terms


def test_gen_header_and_backward(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "3,1,3", "--forward", "1", "--backward", "2")
    assert out.splitlines() == ["alpha=14 beta=-8", "origin_index=-3", "451 33 3 1 3 33"]


def test_gen_origin_first_indexed(capsys):
    _, out, _ = run(capsys, "gen", "--seed", "3,1,3", "--forward", "1", "--origin", "first", "--indexed")
    assert out.splitlines()[1:] == ["origin_index=0", "0 3", "1 1", "2 3", "3 33"]


def test_gen_json(capsys):
    code, out, _ = run(capsys, "gen", "--seed", "3,1,3", "--forward", "2", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data == {
        "alpha": 14,
        "beta": -8,
        "input": {"kind": "seed", "text": "3,1,3"},
        "origin_index": -1,
        "terms": [3, 1, 3, 33, 451],
    }


def test_symbol_and_seed_agree(capsys):
    _, a, _ = run(capsys, "gen", "--symbol", "^4(1,1)^4", "--forward", "6")
    _, b, _ = run(capsys, "gen", "--seed", "3,1,3", "--forward", "6")
    assert a.splitlines()[-1] == b.splitlines()[-1]


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--seed", "1,0,1"],
        ["gen", "--seed", "1,2"],
        ["gen", "--seed", "a,b,c"],
        ["gen", "--label", "[1,2]"],
        ["gen", "--symbol", "^1(0,0)^1"],
    ],
)
def test_bad_input_exit_code(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == EXIT_INPUT
    assert out == "" and err.startswith("error:")


def test_negative_count_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--seed", "3,1,3", "--forward", "-1"])
    assert exc.value.code == 2


def test_verify_pass(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "3,1,3")
    lines = out.splitlines()
    assert code == EXIT_OK
    assert lines[-1] == "OK"
    assert all(line.split()[0] in ("PASS", "SKIP") for line in lines[:-1])


def test_verify_tampered_window(capsys):
    code, out, _ = run(capsys, "verify", "--window", "1,3,34", "--constants", "14,-8")
    assert code == EXIT_VERIFY
    assert "FAIL compatibility  (pair at index 1)" in out
    assert out.splitlines()[-1] == "FAILED"


def test_verify_json(capsys):
    code, out, _ = run(capsys, "verify", "--seed=15,35,161", "--json")
    data = json.loads(out)
    assert code == EXIT_OK and data["ok"] is True
    ug = next(c for c in data["checks"] if c["name"] == "underground_roundtrip")
    assert ug["detail"] == "g=1 symbol=^2(5,7)^4 at index -1"


def test_verify_requires_input():
    with pytest.raises(SystemExit):
        main(["verify"])


def _svg(text):
    ns = "{http://www.w3.org/2000/svg}"
    return ET.fromstring(text.encode()).findall(f".//{ns}circle")


def test_render_vesica(capsys):
    code, out, _ = run(capsys, "render", "--seed", "3,1,3")
    circles = _svg(out)
    assert code == EXIT_OK
    lens = [c for c in circles if c.get("class") == "lens"]
    chain = [c for c in circles if c.get("class") == "chain"]
    assert [float(c.get("r")) for c in lens] == [2.0, 2.0]
    assert len(chain) == 9


def test_render_scale(capsys, tmp_path):
    out1 = tmp_path / "a.svg"
    out2 = tmp_path / "b.svg"
    assert main(["render", "--seed", "3,1,3", "--output", str(out1)]) == EXIT_OK
    assert main(["render", "--seed", "3,1,3", "--scale", "100", "--output", str(out2)]) == EXIT_OK
    for a, b in zip(_svg(out1.read_text()), _svg(out2.read_text())):
        for attr in ("cx", "cy", "r"):
            assert float(b.get(attr)) == pytest.approx(100 * float(a.get(attr)), rel=1e-12, abs=1e-12)


@pytest.mark.parametrize("seed", ["2,-1,2", "0,1,3"])
def test_render_not_renderable(capsys, seed):
    code, out, err = run(capsys, "render", f"--seed={seed}")
    assert code == EXIT_RENDER
    assert out == "" and err.startswith("not renderable")


def test_bfile(capsys):
    code, out, _ = run(capsys, "bfile", "--seed", "3,1,3", "--forward", "4")
    assert code == EXIT_OK
    assert out.splitlines() == [
        "# lens sequence from seed 3,1,3: alpha=14 beta=-8",
        "0 1",
        "1 3",
        "2 33",
        "3 451",
    ]


def test_bfile_origin_first(capsys):
    _, out, _ = run(capsys, "bfile", "--seed", "3,1,3", "--forward", "4", "--origin", "first")
    assert out.splitlines()[1:] == ["0 3", "1 1", "2 3", "3 33"]


def test_bfile_header_only(capsys):
    code, out, _ = run(capsys, "bfile", "--seed", "3,1,3", "--forward", "0")
    assert code == EXIT_OK
    assert out.splitlines() == ["# lens sequence from seed 3,1,3: alpha=14 beta=-8"]


def test_bfile_underground(capsys):
    code, out, _ = run(capsys, "bfile", "--symbol", "^3(1,1)^3", "--underground", "--forward", "5")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "# underground sequence of symbol ^3(1,1)^3"
    # f alternates multipliers 3, 3: 1, 1, 2, 5, 13
    assert lines[1:] == ["0 1", "1 1", "2 2", "3 5", "4 13"]


def test_bfile_non_integral(capsys):
    code, _, err = run(capsys, "bfile", "--seed", "1,2,3")
    assert code == EXIT_INPUT and "error:" in err


def test_info(capsys):
    code, out, _ = run(capsys, "info", "--seed", "3,1,3", "--json")
    data = json.loads(out)
    assert code == EXIT_OK
    assert data["alpha"] == 14 and data["beta"] == -8
    assert data["R"] == 2 and data["K"] == "-1/2"
    assert data["symbol"] == "^4(1,1)^4" and data["label"] == "[3,1;4]"
    assert data["class"] == "converging_inner"


@pytest.mark.parametrize(
    "argv",
    [
        ["gen", "--seed", "3,1,3", "--forward", "8", "--backward", "3", "--json"],
        ["verify", "--seed", "2,1,2", "--json"],
        ["render", "--seed", "2,1,2", "--count", "7"],
        ["bfile", "--label", "[3,1;4]"],
        ["info", "--symbol", "^2(5,7)^4"],
    ],
)
def test_output_is_deterministic(capsys, argv):
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b and a
