import json


def test_construct_prime_and_verify(run_cli, tmp_path):
    code, out, err = run_cli("construct", "--d", 5, "--kind", "prime",
                             "--out", tmp_path / "fam5.json")
    assert code == 0, err
    payload = json.loads((tmp_path / "fam5.json").read_text())
    assert payload["count"] == 5 and payload["verified"]

    code, out, _ = run_cli("verify", tmp_path / "fam5.json")
    assert code == 0
    report = json.loads(out)
    assert report["bases"] == 6 and report["family_ok"] and report["points_ok"]


def test_construct_non_prime_is_usage_error(run_cli):
    code, out, err = run_cli("construct", "--d", 6, "--kind", "prime")
    assert code == 2
    assert "not prime" in err


def test_construct_prime_power(run_cli, tmp_path):
    code, _, err = run_cli("construct", "--d", 9, "--kind", "prime-power",
                           "--out", tmp_path / "fam9.json")
    assert code == 0, err
    payload = json.loads((tmp_path / "fam9.json").read_text())
    assert payload["count"] == 9 and payload["verified"]

    code, _, err = run_cli("construct", "--d", 10, "--kind", "prime-power")
    assert code == 2
    assert "prime power" in err


def test_witness_d6(run_cli):
    code, out, _ = run_cli("witness", "--d", 6)
    assert code == 0
    payload = json.loads(out)
    assert payload["bound"] == "36"
    assert payload["constant_term"] == "1"
    assert payload["valid"]


def test_bound_subcommand(run_cli, tmp_path):
    run_cli("construct", "--d", 3, "--kind", "prime", "--out", tmp_path / "f.json")
    code, out, _ = run_cli("bound", tmp_path / "f.json")
    assert code == 0
    payload = json.loads(out)
    assert payload["bound"] == "9"
    assert abs(payload["s_spectral"] - 81) < 1e-6


def test_grid_csv_and_json(run_cli):
    code, out, _ = run_cli("grid", "--d", 3, "--m", 3)
    assert code == 0
    assert out.splitlines()[0] == "0,1,UB"
    code, out, _ = run_cli("grid", "--d", 3, "--m", 3, "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["ort"] == [[1, 2], [2, 1]]


def test_sidon_d6(run_cli):
    code, out, _ = run_cli("sidon", "--d", 6)
    assert code == 0
    payload = json.loads(out)
    assert payload["verified"]
    assert payload["n"] == 36 and len(payload["elements"]) == 6
    assert payload["row_quotients"]["ok"]
    assert payload["row_quotients"]["max_violation"] < 1e-9


def test_lp_d3m3(run_cli, tmp_path):
    code, out, _ = run_cli(
        "lp", "--d", 3, "--m", 3, "--dual-witness", tmp_path / "dw.json"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "optimal"
    assert abs(payload["M"] - 9.0) < 1e-6
    witness = json.loads((tmp_path / "dw.json").read_text())
    assert witness["mode"] == "grid" and witness["m"] == 3


def test_pseudo_check_exit_codes(run_cli, tmp_path):
    run_cli("lp", "--d", 2, "--m", 2, "--dual-witness", tmp_path / "dw.json")
    code, out, _ = run_cli("pseudo-check", "--d", 2, tmp_path / "dw.json")
    assert code == 1       # valid file, failed check
    payload = json.loads(out)
    assert not payload["ok"]

    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    code, _, err = run_cli("pseudo-check", "--d", 2, bad)
    assert code == 2       # input error


def test_export_lp(run_cli, tmp_path):
    code, _, _ = run_cli("export-lp", "--d", 2, "--m", 2,
                         "--out", tmp_path / "p.lp")
    assert code == 0
    text = (tmp_path / "p.lp").read_text()
    assert "Maximize" in text and text.count(">=") == 1  # one nontrivial row


def test_usage_errors(run_cli):
    code, _, _ = run_cli("grid", "--d", 3)          # missing --m
    assert code == 2
    code, _, _ = run_cli("definitely-not-a-command")
    assert code == 2


def test_help_paths(run_cli):
    for cmd in ["construct", "verify", "grid", "witness", "bound", "sidon",
                "lp", "pseudo-check", "export-lp"]:
        code, out, err = run_cli(cmd, "--help")
        assert code == 0
        assert "usage" in out.lower()


def test_outputs_deterministic_across_runs_and_workers(run_cli):
    baseline = None
    for workers in (1, 4, 2):
        code, out, _ = run_cli("lp", "--d", 3, "--m", 3, "--workers", workers)
        assert code == 0
        if baseline is None:
            baseline = out
        assert out == baseline
    g1 = run_cli("grid", "--d", 4, "--m", 4, "--format", "json", "--workers", 1)
    g2 = run_cli("grid", "--d", 4, "--m", 4, "--format", "json", "--workers", 4)
    assert g1[1] == g2[1]
