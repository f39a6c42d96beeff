import json

import pytest

from fieldstar.cli import main

KG_CONFIG = {
    "dim": 3,
    "fields": [{"name": "phi", "kind": "real", "pair": "pi"}],
    "constants": ["m"],
    "functions": {"U": True},
    "kernel": "i*delta",
    "order": 6,
    "tolerance": 1e-8,
    "seed": 0,
    "hamiltonian": ("1/2*(pi^2 + d1(phi)^2 + d2(phi)^2 + d3(phi)^2"
                    " + m^2*phi^2) + U(phi)"),
}

NLS_CONFIG = {
    "dim": 3,
    "fields": [{"name": "psi", "kind": "complex"}],
    "constants": ["kappa"],
    "functions": {},
    "kernel": "i*delta",
    "hamiltonian": ("psi[1,0,0]*psibar[1,0,0] + psi[0,1,0]*psibar[0,1,0]"
                    " + psi[0,0,1]*psibar[0,0,1] + kappa*(psi*psibar)^2"),
}


@pytest.fixture
def kg_config(tmp_path):
    path = tmp_path / "kg.json"
    path.write_text(json.dumps(KG_CONFIG))
    return str(path)


@pytest.fixture
def nls_config(tmp_path):
    path = tmp_path / "nls.json"
    path.write_text(json.dumps(NLS_CONFIG))
    return str(path)


def test_eom_prints_wave_equation(kg_config, capsys):
    assert main(["eom", "--config", kg_config, "--field", "pi"]) == 0
    assert capsys.readouterr().out.strip() \
        == "laplacian(phi) - m^2*phi - U'(phi)"
    assert main(["eom", "--config", kg_config, "--field", "phi"]) == 0
    assert capsys.readouterr().out.strip() == "pi"


def test_eom_prints_nls(nls_config, capsys):
    assert main(["eom", "--config", nls_config, "--field", "psi"]) == 0
    assert capsys.readouterr().out.strip() \
        == "-laplacian(psi) + 2*kappa*psi^2*psibar"


def test_classify_kernels(capsys):
    assert main(["classify", "--kernel", "d1 delta", "--dim", "1"]) == 0
    assert capsys.readouterr().out.strip() == "antisymmetric"
    assert main(["classify", "--kernel", "delta + 2*d1 delta",
                 "--dim", "1"]) == 0
    assert capsys.readouterr().out.strip() == "mixed"


def test_bracket_command(capsys):
    assert main(["bracket", "phi^2", "pi", "--dim", "1",
                 "--kernel", "delta"]) == 0
    assert capsys.readouterr().out.strip() == "2*phi{x}*delta{x,y}"


def test_star_command_shows_series(capsys):
    assert main(["star", "phi", "pi", "--dim", "1", "--kernel", "delta"]) == 0
    out = capsys.readouterr().out
    assert "hbar^0: phi{x}*pi{y}" in out
    assert "hbar^1: delta{x,y}" in out


def test_vardiff_command(capsys):
    assert main(["vardiff", "1/2*(pi^2 + d1(phi)^2 + m^2*phi^2) + U(phi)",
                 "--field", "phi", "--dim", "1"]) == 0
    assert capsys.readouterr().out.strip() \
        == "-laplacian(phi) + m^2*phi + U'(phi)"


def test_verify_commands_exit_zero(capsys):
    assert main(["verify", "jacobi", "--dim", "1", "--seed", "7",
                 "--trials", "5"]) == 0
    assert main(["verify", "duality", "--dim", "1", "--trials", "10"]) == 0
    assert main(["verify", "peierls"]) == 0
    out = capsys.readouterr().out
    assert "PASS" in out and "FAIL" not in out


def test_parse_error_exits_two(capsys):
    assert main(["bracket", "phi +", "pi", "--dim", "1"]) == 2
    assert "error" in capsys.readouterr().err


def test_unknown_field_exits_two(kg_config, capsys):
    assert main(["eom", "--config", kg_config, "--field", "nope"]) == 2


def test_json_output_is_canonical(capsys):
    assert main(["bracket", "phi", "pi", "--dim", "1", "--kernel", "delta",
                 "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "tensor"
    assert payload["dim"] == 1


def test_peierls_eval_json(capsys):
    assert main(["peierls", "eval", "--mass", "1", "--time", "0.5",
                 "--modes", "2", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["kind"] == "spectral"
    assert len(payload["data"]) == 5
