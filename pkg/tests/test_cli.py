import json

import pytest

from humbert.catalog import load_catalog, save_catalog
from humbert.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def json_lines(out):
    return [json.loads(line) for line in out.strip().splitlines() if line]


class TestEval:
    def test_known_value(self, capsys):
        code, out, _ = run(
            capsys, "eval", "phi1", "--alpha", "1", "--beta", "1",
            "--gamma", "2", "--x", "0.5", "--y", "0",
        )
        assert code == 0
        payload = json.loads(out)
        assert abs(payload["value"] - 1.3862943611198906) < 1e-11
        assert set(payload) == {"value", "diagonals", "est_error"}

    def test_trivial_origin(self, capsys):
        code, out, _ = run(
            capsys, "eval", "phi3", "--beta", "1", "--gamma", "2",
            "--x", "0", "--y", "0",
        )
        assert code == 0
        assert json.loads(out)["value"] == 1.0

    def test_rational_flags(self, capsys):
        code, out, _ = run(
            capsys, "eval", "phi2", "--beta1", "2/7", "--beta2", "3/8",
            "--gamma", "5/4", "--x", "1/10", "--y", "1/5",
        )
        assert code == 0
        assert json.loads(out)["value"] > 1.0

    def test_single_kind(self, capsys):
        code, out, _ = run(
            capsys, "eval", "kummer1f1", "--alpha", "1", "--gamma", "1",
            "--x", "0.3",
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["value"] == pytest.approx(1.3498588075760032, rel=1e-11)
        assert "terms" in payload

    def test_domain_error_exit_2(self, capsys):
        code, out, err = run(
            capsys, "eval", "phi1", "--alpha", "1", "--beta", "1",
            "--gamma", "2", "--x", "1.5", "--y", "0",
        )
        assert code == 2
        assert out == ""
        assert "DomainError" in err

    def test_unknown_kind_exit_2(self, capsys):
        code, _, err = run(capsys, "eval", "nosuch", "--x", "0")
        assert code == 2
        assert "unknown kind" in err

    def test_missing_params_exit_2(self, capsys):
        code, _, err = run(capsys, "eval", "phi1", "--x", "0.1")
        assert code == 2
        assert "SignatureError" in err


class TestVerify:
    def test_formula_pass(self, capsys):
        code, out, err = run(
            capsys, "verify", "formula", "2.36",
            "--profile", "generic-A", "--n", "8",
        )
        assert code == 0
        (report,) = json_lines(out)
        assert report["target"] == "2.36"
        assert report["status"] == "pass"
        assert report["settings"]["N"] == 8
        assert "1 pass" in err

    def test_identity_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "identity", "2.19", "--n", "6")
        assert code == 0
        (report,) = json_lines(out)
        assert report["status"] == "pass"

    def test_unknown_formula_exit_2(self, capsys):
        code, _, err = run(capsys, "verify", "formula", "9.99")
        assert code == 2
        assert "UnknownFormula" in err

    def test_missing_id_exit_2(self, capsys):
        code, _, err = run(capsys, "verify", "formula")
        assert code == 2
        assert "id is required" in err

    def test_unknown_profile_exit_2(self, capsys):
        code, _, err = run(
            capsys, "verify", "formula", "2.36", "--profile", "nope"
        )
        assert code == 2
        assert "unknown profile" in err

    def test_verify_all_emits_all_reports_sorted(self, capsys):
        code, out, err = run(capsys, "verify", "all", "--n", "5")
        assert code == 0
        reports = json_lines(out)
        assert len(reports) == 70
        targets = [r["target"] for r in reports]
        assert targets == sorted(targets, key=lambda s: (len(s), s))
        assert {r["status"] for r in reports} == {"pass"}
        assert "70 reports" in err

    def test_deterministic_modulo_duration(self, capsys):
        _, first, _ = run(capsys, "verify", "formula", "2.40", "--n", "5")
        _, second, _ = run(capsys, "verify", "formula", "2.40", "--n", "5")

        def strip(text):
            return [
                {k: v for k, v in json.loads(line).items() if k != "duration"}
                for line in text.strip().splitlines()
            ]

        assert strip(first) == strip(second)

    def test_env_var_catalog_override(self, capsys, monkeypatch, tmp_path):
        catalog = load_catalog()
        small = tmp_path / "partial.json"
        save_catalog(catalog[:2], small)
        monkeypatch.setenv("HUMBERT_CATALOG", str(small))
        code, out, _ = run(capsys, "verify", "all", "--n", "4")
        assert code == 0
        reports = json_lines(out)
        # 2 formula reports + 35 identity reports
        assert len(reports) == 37


class TestIntegralCheck:
    def test_single_rep_with_grid_and_tol(self, capsys):
        code, out, _ = run(
            capsys, "integral-check", "4.1", "--grid", "3x3",
            "--tol", "1e-8",
        )
        assert code == 0
        (report,) = json_lines(out)
        assert report["status"] == "pass"
        assert len(report["settings"]["grid"]) == 9
        assert report["numeric"]["tolerance"] == 1e-8

    def test_unknown_rep_exit_2(self, capsys):
        code, _, err = run(capsys, "integral-check", "4.99")
        assert code == 2
        assert "UnknownFormula" in err

    def test_bad_grid_exit_2(self, capsys):
        code, _, err = run(capsys, "integral-check", "4.1", "--grid", "x")
        assert code == 2
        assert "grid" in err

    def test_constraint_violating_profile_exit_2(self, capsys, tmp_path):
        import json as _json

        from humbert.profiles import DATA_PATH

        config = _json.loads(DATA_PATH.read_text())
        config["profiles"]["generic-A"]["eps"] = "1/100"  # below alpha
        config["overrides"] = {}  # keep the sabotaged value in force
        bad = tmp_path / "config.json"
        bad.write_text(_json.dumps(config))
        code, _, err = run(
            capsys, "integral-check", "4.8", "--config", str(bad)
        )
        assert code == 2
        assert "ConstraintViolation" in err

    def test_all_reports_failures_exit_1(self, capsys):
        code, out, err = run(capsys, "integral-check", "all")
        assert code == 1
        reports = json_lines(out)
        assert len(reports) == 20
        statuses = {r["target"]: r["status"] for r in reports}
        failing = {t for t, s in statuses.items() if s == "fail"}
        assert failing == {"4.14", "4.15"}
        for report in reports:
            if report["status"] == "fail":
                assert report["numeric"]["worst_point"] is not None
        assert "18 pass, 2 fail" in err
