import json

import pytest

from ctxgeom.cli import EXIT_BAD_ARGS, EXIT_OK, main


def run(tmp_path, *argv):
    out = tmp_path / "out"
    code = main([*argv, "--out", str(out)])
    return code, out


class TestKcbsCommand:
    def test_produces_all_outputs(self, tmp_path):
        code, out = run(tmp_path, "kcbs")
        assert code == EXIT_OK
        for name in ("kcbs_summary.json", "fig1.csv", "fig2a.csv", "fig2b.csv"):
            assert (out / name).exists()

    def test_fig1_grid_and_metadata(self, tmp_path):
        _, out = run(tmp_path, "kcbs")
        lines = (out / "fig1.csv").read_text().splitlines()
        assert lines[0].startswith("# p_star = 0.585410")
        assert lines[1].startswith("# s2_total_bits = 2.7265")
        assert lines[2] == "p,chi,cf,bc_max_bits"
        rows = [ln.split(",") for ln in lines[3:]]
        assert len(rows) == 7
        # chi hits the noncontextual bound exactly on the p_star grid point
        star = next(r for r in rows if r[0] == "0.585410")
        assert star[1] == "-3.000000"
        assert float(rows[-1][2]) == pytest.approx(0.472136, abs=1e-6)

    def test_custom_p_grid(self, tmp_path):
        _, out = run(tmp_path, "kcbs", "--p", "0.1", "--p", "0.9")
        lines = (out / "fig1.csv").read_text().splitlines()
        assert [ln.split(",")[0] for ln in lines[3:]] == ["0.100000", "0.900000"]

    def test_summary_reports_trivial_mu_bound(self, tmp_path):
        _, out = run(tmp_path, "kcbs")
        summary = json.loads((out / "kcbs_summary.json").read_text())
        assert len(summary["contexts"]) == 5
        for ctx in summary["contexts"]:
            assert ctx["mu_bound_trivial"] is True
            assert ctx["c_mu"] == pytest.approx(1.0, abs=1e-6)

    def test_reruns_are_byte_identical(self, tmp_path):
        _, out1 = run(tmp_path / "a", "kcbs")
        _, out2 = run(tmp_path / "b", "kcbs")
        for name in ("fig1.csv", "fig2a.csv", "fig2b.csv", "kcbs_summary.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


class TestChshCommand:
    def test_bell_regime_summary(self, tmp_path):
        code, out = run(tmp_path, "chsh", "--regime", "bell")
        assert code == EXIT_OK
        summary = json.loads((out / "chsh_summary.json").read_text())
        assert summary["chi"] == pytest.approx(2.828427, abs=1e-6)
        assert summary["D_total"] == 0.0
        assert all(ctx["saturated"] for ctx in summary["contexts"])

    def test_entropic_regime_summary(self, tmp_path):
        _, out = run(tmp_path, "chsh", "--regime", "entropic")
        summary = json.loads((out / "chsh_summary.json").read_text())
        assert summary["cf"] == 0.0
        assert summary["bc_bits"]["k0"] == pytest.approx(0.2309, abs=5e-4)
        assert not any(ctx["saturated"] for ctx in summary["contexts"])

    def test_explicit_angles_override_regime(self, tmp_path):
        _, out = run(tmp_path, "chsh", "--angles", "0", "0.916", "0.524", "-2.880")
        summary = json.loads((out / "chsh_summary.json").read_text())
        assert summary["regime"] == "custom"
        assert summary["chi"] == pytest.approx(1.5329, abs=5e-4)

    def test_equal_angles_sit_on_classical_boundary(self, tmp_path):
        _, out = run(tmp_path, "chsh", "--angles", "0", "0", "0", "0")
        summary = json.loads((out / "chsh_summary.json").read_text())
        assert summary["chi"] == pytest.approx(2.0, abs=1e-9)
        assert summary["cf"] == 0.0


class TestNcycleCommand:
    def test_default_table(self, tmp_path):
        code, out = run(tmp_path, "ncycle")
        assert code == EXIT_OK
        lines = (out / "ncycle.csv").read_text().splitlines()
        rows = [ln.split(",") for ln in lines[2:]]
        assert [r[0] for r in rows] == ["5", "7", "9", "11", "13", "15"]
        assert rows[0][1] == "48.030085"

    def test_json_format(self, tmp_path):
        code, out = run(tmp_path, "ncycle", "--n", "5", "--format", "json")
        assert code == EXIT_OK
        payload = json.loads((out / "ncycle.json").read_text())
        assert payload["rows"][0]["n"] == 5
        assert payload["rows"][0]["theta_deg"] == pytest.approx(48.030085, abs=1e-6)

    def test_rejects_even_n(self, tmp_path):
        code, _ = run(tmp_path, "ncycle", "--n", "6")
        assert code == EXIT_BAD_ARGS


class TestVerifyCommand:
    def test_report_contents(self, tmp_path):
        code, out = run(tmp_path, "verify", "--trials", "50", "--seed", "9")
        assert code == EXIT_OK
        payload = json.loads((out / "verify.json").read_text())
        assert payload["exactness"]["kcbs"]["mechanism"] == "cyclic-orthogonality"
        assert payload["exactness"]["chsh_bell"]["mechanism"] == "distinct-bases"
        assert payload["monotonicity"]["trials"] == 50
        assert payload["monotonicity"]["violations"] == 0

    def test_rejects_bad_trials(self, tmp_path):
        code, _ = run(tmp_path, "verify", "--trials", "0")
        assert code == EXIT_BAD_ARGS


class TestCommonFlags:
    def test_precision_floor(self, tmp_path):
        code, _ = run(tmp_path, "kcbs", "--precision", "3")
        assert code == EXIT_BAD_ARGS

    def test_higher_precision_respected(self, tmp_path):
        _, out = run(tmp_path, "ncycle", "--n", "5", "--precision", "8")
        lines = (out / "ncycle.csv").read_text().splitlines()
        assert lines[2].split(",")[1] == "48.03008477"

    def test_env_var_sets_default_out(self, tmp_path, monkeypatch):
        target = tmp_path / "from_env"
        monkeypatch.setenv("CTXGEOM_OUT", str(target))
        assert main(["ncycle", "--n", "5"]) == EXIT_OK
        assert (target / "ncycle.csv").exists()

    def test_flag_wins_over_env_var(self, tmp_path, monkeypatch):
        monkeypatch.setenv("CTXGEOM_OUT", str(tmp_path / "ignored"))
        explicit = tmp_path / "explicit"
        assert main(["ncycle", "--n", "5", "--out", str(explicit)]) == EXIT_OK
        assert (explicit / "ncycle.csv").exists()
        assert not (tmp_path / "ignored").exists()

    def test_unknown_subcommand_is_bad_args(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == EXIT_BAD_ARGS
