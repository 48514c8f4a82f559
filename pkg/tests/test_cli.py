import json

import pytest

from lpscatter.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_linset_scattered(capsys):
    code, out, _ = run_cli(capsys, "linset", "--p", "3", "--r", "1", "--n", "3",
                           "--s", "1", "--theta", "g^1")
    assert code == 0
    rows = dict(line.split("\t") for line in out.strip().splitlines())
    assert rows["size"] == "13"
    assert rows["scattered"] == "True"
    assert rows["bound_status"] == "attained"


def test_linset_pseudoregulus_needs_flag(capsys):
    code, _, err = run_cli(capsys, "linset", "--p", "3", "--r", "1", "--n", "3",
                           "--s", "1", "--theta", "0")
    assert code == 2 and "allow-invalid" in err
    code, out, _ = run_cli(capsys, "linset", "--p", "3", "--r", "1", "--n", "3",
                           "--s", "1", "--theta", "0", "--allow-invalid")
    assert code == 0
    rows = dict(line.split("\t") for line in out.strip().splitlines())
    assert rows["scattered"] == "True" and rows["valid"] == "False"


def test_linset_norm_one_not_scattered(capsys):
    # find a norm-one theta over F_81 via g^k: N(g^k) = 1 iff 4 | k
    code, out, _ = run_cli(capsys, "linset", "--p", "3", "--r", "1", "--n", "4",
                           "--s", "1", "--theta", "g^4", "--allow-invalid")
    assert code == 0
    rows = dict(line.split("\t") for line in out.strip().splitlines())
    assert rows["scattered"] == "False"


def test_equiv_same_params(capsys):
    code, out, _ = run_cli(capsys, "equiv", "--p", "3", "--r", "1", "--n", "4",
                           "--s", "1", "--theta", "g^1", "--t", "1", "--delta", "g^1",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["equivalent"] is True
    assert payload["checked"] is True


def test_equiv_s_mismatch(capsys):
    code, out, _ = run_cli(capsys, "equiv", "--p", "3", "--r", "1", "--n", "5",
                           "--s", "1", "--theta", "g^1", "--t", "2", "--delta", "g^1",
                           "--format", "json")
    assert code == 0
    assert json.loads(out)["equivalent"] is False


def test_equiv_normalizes_s(capsys):
    code, out, _ = run_cli(capsys, "equiv", "--p", "3", "--r", "1", "--n", "5",
                           "--s", "4", "--theta", "g^1", "--t", "1", "--delta", "g^-1",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["s"] == 1 and payload["equivalent"] is True


def test_aut_listing(capsys):
    code, out, _ = run_cli(capsys, "aut", "--p", "3", "--r", "1", "--n", "4",
                           "--s", "1", "--theta", "g^1", "--format", "json",
                           "--brute-force")
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] == payload["predicted_size"]
    assert payload["size"] == 2 * (3 + 1) * payload["n_tau"]
    assert payload["antidiagonal"] > 0
    assert payload["agreement"] is True
    assert len(payload["elements"]) == payload["size"]


def test_aut_n6_size(capsys):
    code, out, _ = run_cli(capsys, "aut", "--p", "3", "--r", "1", "--n", "6",
                           "--s", "1", "--theta", "g^1", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["size"] == (3 + 1) * payload["n_tau"]
    assert payload["antidiagonal"] == 0


def test_census_grid(capsys):
    code, out, _ = run_cli(capsys, "census", "--p", "7", "--r", "1", "--n", "5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].split("\t") == ["p", "r", "n", "lambda", "epsilon",
                                    "lower", "upper", "oracle", "verified"]
    row = lines[1].split("\t")
    assert row[3] == "6" and row[8] == "True"
    assert row[5] == "-"  # bounds need r > 1


def test_census_rejects_q2(capsys):
    code, _, err = run_cli(capsys, "census", "--p", "2", "--r", "1", "--n", "4")
    assert code == 2 and "q = 2" in err


def test_census_json(capsys):
    code, out, _ = run_cli(capsys, "census", "--p", "2", "--r", "2", "--n", "3",
                           "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["lambda"] == 1 and payload[0]["verified"] is True


def test_verify_unknown_suite(capsys):
    code, _, err = run_cli(capsys, "verify", "--suite", "nope")
    assert code == 2 and "unknown suite" in err


def test_verify_normpower_passes(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "normpower")
    assert code == 0
    assert "0 failures" in out


def test_verify_bounds_reports_equality_cells(capsys):
    code, out, _ = run_cli(capsys, "verify", "--suite", "bounds")
    assert code == 1  # strict sandwich fails at odd prime r with odd n
    assert "144 checks, 24 failures" in out


def test_byte_determinism(capsys):
    args = ("census", "--p", "3", "--r", "1-2", "--n", "3-4", "--ceiling", "128")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_invalid_element_encoding(capsys):
    code, _, err = run_cli(capsys, "linset", "--p", "3", "--r", "1", "--n", "3",
                           "--s", "1", "--theta", "99")
    assert code == 2 and "out of range" in err


def test_modulus_override_flag(capsys):
    code, out, _ = run_cli(capsys, "linset", "--p", "3", "--r", "1", "--n", "2",
                           "--modulus", "2,1,1", "--s", "1", "--theta", "3")
    assert code == 2  # n = 2 rejected for the two-term family
    code, _, err = run_cli(capsys, "linset", "--p", "3", "--r", "1", "--n", "3",
                           "--modulus", "0,0,0,1", "--s", "1", "--theta", "3")
    assert code == 2 and "reducible" in err


def test_run_config_validation():
    from lpscatter.cli import RunConfig
    cfg = RunConfig()
    assert cfg.fmt == "tsv" and cfg.brute_ceiling == 4096
    with pytest.raises(ValueError):
        RunConfig(fmt="xml")
    with pytest.raises(ValueError):
        RunConfig(brute_ceiling=0)
    with pytest.raises(ValueError):
        RunConfig(workers=-1)
