import json

import pytest

from quasidet.cli import main


@pytest.fixture
def matrix_file(tmp_path):
    path = tmp_path / "matrix.json"
    path.write_text(
        json.dumps(
            {"rows": 2, "cols": 2, "entries": [["1", "2"], ["3", "4"]]}
        )
    )
    return str(path)


@pytest.fixture
def wide_matrix_file(tmp_path):
    path = tmp_path / "wide.json"
    path.write_text(
        json.dumps(
            {
                "rows": 1,
                "cols": 3,
                "entries": [["2", "3", "5"]],
            }
        )
    )
    return str(path)


def test_qdet_subcommand(matrix_file, capsys):
    code = main(["qdet", "--matrix", matrix_file, "--p", "1", "--q", "1"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "-1/2"


def test_qdet_method_flag(matrix_file, capsys):
    code = main(
        ["qdet", "--matrix", matrix_file, "--p", "1", "--q", "1", "--method", "recursive"]
    )
    assert code == 0
    assert capsys.readouterr().out.strip() == "-1/2"


def test_qpc_left(wide_matrix_file, capsys):
    code = main(["qpc", "left", "--matrix", wide_matrix_file, "--i", "2", "--j", "3"])
    assert code == 0
    assert capsys.readouterr().out.strip() == "5/3"


def test_gauss_emits_factors(matrix_file, capsys):
    code = main(["gauss", "--matrix", matrix_file])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert set(payload) == {"U", "Y", "L"}
    assert payload["Y"][1][1] == "4"


def test_verify_with_report_and_replay(tmp_path, capsys):
    report_path = str(tmp_path / "out.json")
    code = main(
        [
            "verify",
            "--only",
            "FALSE-COMMUTE,RING-AXIOMS",
            "--samples",
            "3",
            "--seed",
            "0xBEEF",
            "--report",
            report_path,
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "FALSE-COMMUTE" in out and "counterexample" in out
    code = main(["replay", "--report", report_path, "--id", "FALSE-COMMUTE"])
    assert code == 0
    replay_out = json.loads(capsys.readouterr().out)
    assert replay_out["reproduced"]


def test_verify_filters_dims(capsys):
    code = main(
        ["verify", "--only", "RING-AXIOMS", "--dims", "1", "--samples", "2"]
    )
    assert code == 0


def test_list_identities(capsys):
    code = main(["list-identities"])
    assert code == 0
    out = capsys.readouterr().out
    assert "SYLVESTER" in out and "GAUSS-DECOMP" in out


def test_symm_vieta(capsys):
    code = main(["symm", "--n", "2", "--d", "1", "--check", "vieta", "--seed", "5"])
    assert code == 0
    assert "coefficient routes agree: True" in capsys.readouterr().out


def test_symm_bezout(capsys):
    code = main(["symm", "--n", "2", "--d", "2", "--check", "bezout", "--seed", "5"])
    assert code == 0
    assert "factorization exact: True" in capsys.readouterr().out


def test_symm_complete_and_ribbon(capsys):
    code = main(["symm", "--n", "2", "--d", "2", "--check", "complete", "--seed", "5"])
    assert code == 0
    assert "routes agree: True" in capsys.readouterr().out
    code = main(["symm", "--n", "2", "--d", "1", "--check", "ribbon", "--seed", "5"])
    assert code == 0
    assert "R_(1, 2)" in capsys.readouterr().out


def test_qpc_with_bordering_set(tmp_path, capsys):
    path = tmp_path / "two_rows.json"
    path.write_text(
        json.dumps(
            {
                "rows": 2,
                "cols": 4,
                "entries": [["1", "2", "0", "3"], ["0", "1", "4", "1"]],
            }
        )
    )
    code = main(
        ["qpc", "left", "--matrix", str(path), "--i", "1", "--j", "3", "--set", "2"]
    )
    assert code == 0
    # minor-ratio oracle: p = p_{(3,2)} / p_{(1,2)} = (0*1-4*2)/(1*1-0*2)
    assert capsys.readouterr().out.strip() == "-8"


def test_contfrac_command(capsys):
    code = main(["contfrac", "--n", "4", "--d", "2", "--seed", "5"])
    assert code == 0
    assert "corner quasideterminant: True" in capsys.readouterr().out


def test_rr_command(capsys):
    code = main(["rr", "--order", "3", "--depth", "6"])
    assert code == 0
    out = capsys.readouterr().out
    assert "all coefficients match: True" in out
    assert "z^1" in out


def test_usage_error_exit_code(capsys, tmp_path):
    assert main(["qdet", "--matrix", str(tmp_path / "missing.json"), "--p", "1", "--q", "1"]) == 3
    assert main(["verify", "--only", "NOPE"]) == 3


def test_bad_subcommand_exit_code():
    assert main(["not-a-command"]) == 3
