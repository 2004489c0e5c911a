import json

import pytest

from lieflow.cli import main, parse_complex, parse_complex_list, parse_int_list

RICCATI = {"p": 1, "components": [[{"m": [2], "re": 1.0, "im": 0.0}]]}
UNIT_FIELD = {"p": 1, "components": [[{"m": [0], "re": 1.0}]]}


@pytest.fixture()
def riccati_file(tmp_path):
    path = tmp_path / "riccati.json"
    path.write_text(json.dumps(RICCATI))
    return str(path)


@pytest.fixture()
def unit_file(tmp_path):
    path = tmp_path / "unit.json"
    path.write_text(json.dumps(UNIT_FIELD))
    return str(path)


def test_parse_complex():
    assert parse_complex("0.5") == 0.5
    assert parse_complex("-2e-3") == -2e-3
    assert parse_complex("0.3+0.2i") == 0.3 + 0.2j
    assert parse_complex("1-2i") == 1 - 2j
    assert parse_complex("2i") == 2j
    with pytest.raises(Exception):
        parse_complex("1 + 2i")
    with pytest.raises(Exception):
        parse_complex("banana")


def test_parse_lists():
    assert parse_complex_list("1,0") == [1.0, 0.0]
    assert parse_int_list("1,2") == [1, 2]
    with pytest.raises(Exception):
        parse_int_list("1,x")


def test_flow_command(riccati_file, capsys):
    code = main(["flow", "--field", riccati_file, "--x0", "0.5", "--t", "0.4"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert abs(out["y"][0]["re"] - 0.625) <= 1e-8
    assert abs(out["radius"] - 0.444444444444) <= 1e-12


def test_flow_deterministic_output(riccati_file, capsys):
    main(["flow", "--field", riccati_file, "--x0", "0.5", "--t", "0.4"])
    first = capsys.readouterr().out
    main(["flow", "--field", riccati_file, "--x0", "0.5", "--t", "0.4"])
    second = capsys.readouterr().out
    assert first == second
    # canonical form: sorted keys, 12 significant digits
    assert first.index('"order"') < first.index('"radius"') < first.index('"y"')
    assert "0.444444444444" in first


def test_flow_t_zero(riccati_file, capsys):
    code = main(["flow", "--field", riccati_file, "--x0", "0.5", "--t", "0"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["y"][0] == {"re": 0.5, "im": 0.0}
    assert out["order"] == 0


def test_flow_domain_violation(riccati_file, capsys):
    code = main(["flow", "--field", riccati_file, "--x0", "0.5", "--t", "1.0"])
    assert code == 1
    err = capsys.readouterr().err
    assert "0.444444444444" in err


def test_flow_parse_error_exit_2(riccati_file):
    with pytest.raises(SystemExit) as exc:
        main(["flow", "--field", riccati_file, "--x0", "0.5", "--t", "nope"])
    assert exc.value.code == 2


def test_missing_field_file_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["flow", "--field", "/nonexistent.json", "--x0", "0.5", "--t", "0.1"])
    assert exc.value.code == 2


def test_radius_command(riccati_file, capsys):
    code = main(["radius", "--field", riccati_file, "--x0", "0.5"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out == {"m": 2.25, "radius": 0.444444444444}


def test_pathsum_command(unit_file, riccati_file, capsys):
    code = main(["pathsum", "--fields", unit_file, riccati_file,
                 "--alpha", "1", "--beta", "1"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["direct"]["re"] == 2.0
    assert out["pathsum"]["re"] == 2.0
    assert out["bound"] == 6.0


def test_check_relations_command(capsys):
    code = main(["check", "relations", "--p", "1", "--maxdeg", "2"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] is True
    assert out["false_witness"]["worst_word"] == [2]


def test_check_duality_command(capsys):
    code = main(["check", "duality", "--trials", "15", "--seed", "42"])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["trials"] == 15
    assert out["failures"] == []


def test_check_duality_deterministic(capsys):
    main(["check", "duality", "--trials", "15", "--seed", "42"])
    first = capsys.readouterr().out
    main(["check", "duality", "--trials", "15", "--seed", "42"])
    assert capsys.readouterr().out == first


def test_boundary_warning(riccati_file, capsys):
    code = main(["flow", "--field", riccati_file, "--x0", "0.5", "--t", "0.43"])
    assert code == 0
    captured = capsys.readouterr()
    assert "close to the certified radius" in captured.err
    json.loads(captured.out)
