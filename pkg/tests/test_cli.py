"""Command-line interface: verbs, report emission, and the exit-code
contract (0 pass, 1 direction violation, 2 solver gate, 3 input error)."""

from __future__ import annotations

import json

import pytest

from steinshapes.cli import build_parser, main

C_EMP_MAIN = 0.12748320740752622
C_EMP_MAIN_SHORT = 0.12420949227166241


@pytest.fixture()
def configs(tmp_path):
    paths = {}
    for name, payload in {
        "ball": {"base_radius": 1.0, "label": "ball"},
        "bump": {"base_radius": 1.0, "fourier_cos": [0.0, 0.1]},
        "spiky": {"base_radius": 1.0, "fourier_cos": [0.0] * 9 + [0.3]},
        "negative": {"base_radius": -1.0},
        "family": {"k": 2, "amplitudes": [0.04, 0.08]},
    }.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(payload), encoding="utf-8")
        paths[name] = str(path)
    paths["dir"] = tmp_path
    return paths


class TestAnalyze:
    def test_stdout_report(self, configs, capsys):
        assert main(["analyze", configs["ball"]]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["schema_version"] == 1
        assert report["domain_spec"]["label"] == "ball"

    def test_out_file(self, configs, capsys):
        target = configs["dir"] / "report.json"
        assert main(["analyze", configs["ball"], "--out", str(target)]) == 0
        assert "wrote" in capsys.readouterr().out
        assert json.loads(target.read_text(encoding="utf-8"))["schema_version"] == 1

    def test_missing_config_is_an_input_error(self, configs, capsys):
        assert main(["analyze", str(configs["dir"] / "missing.json")]) == 3
        assert "input error" in capsys.readouterr().err

    def test_unconverged_truncation_is_a_solver_gate(self, configs, capsys):
        assert main(["analyze", configs["bump"], "--grid", "4"]) == 2
        assert "solver gate failure" in capsys.readouterr().err


class TestVerify:
    def test_default_family_passes(self, capsys):
        assert main(["verify", "default", "--theorem", "thm-main"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["passed"] is True
        assert float(report["c_emp"]) == pytest.approx(C_EMP_MAIN, rel=1e-12)

    def test_family_file(self, configs, capsys):
        assert main(["verify", configs["family"], "--theorem", "thm-main"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert len(report["labels"]) == 2
        assert float(report["c_emp"]) == pytest.approx(C_EMP_MAIN_SHORT, rel=1e-12)

    def test_unnormalized_shape_is_an_input_error(self, configs, capsys):
        assert main(["verify", configs["bump"], "--theorem", "thm-bw"]) == 3
        assert "input error" in capsys.readouterr().err


class TestSweep:
    def test_csv_to_stdout(self, capsys):
        code = main(
            ["sweep", "--k", "1", "--eps", "0.02,0.04,0.06,0.08",
             "--quantities", "d1"]
        )
        assert code == 0
        lines = capsys.readouterr().out.strip().split("\n")
        assert lines[0] == "epsilon,quantity,value,slope"
        assert len(lines) == 5

    def test_multi_k_out_files_get_mode_suffixes(self, configs, capsys):
        target = configs["dir"] / "sweep.csv"
        code = main(
            ["sweep", "--k", "1,2", "--eps", "0.02,0.04,0.06,0.08",
             "--quantities", "deficit_perimeter", "--out", str(target)]
        )
        assert code == 0
        assert not target.exists()
        for k in (1, 2):
            assert (configs["dir"] / f"sweep.k{k}.csv").exists()
        assert capsys.readouterr().out.count("wrote") == 2

    def test_json_out(self, configs, capsys):
        target = configs["dir"] / "sweep.json"
        code = main(
            ["sweep", "--k", "1", "--eps", "0.02,0.04,0.06,0.08",
             "--quantities", "deficit_perimeter", "--out", str(target)]
        )
        assert code == 0
        decoded = json.loads(target.read_text(encoding="utf-8"))
        assert decoded["quantities"] == ["deficit_perimeter"]
        assert len(decoded["table"][0]) == 4

    def test_malformed_eps_range(self, capsys):
        assert main(["sweep", "--eps", "0.1:0.2"]) == 3
        assert "input error" in capsys.readouterr().err


class TestExpansion:
    def test_default_run_passes(self, capsys):
        assert main(["expansion"]) == 0
        out = capsys.readouterr().out
        for name in ("volume", "perimeter", "momentum", "difference"):
            assert f"{name}: slope" in out
        assert "volume: slope inf" in out

    def test_unresolvable_slope_flags_a_violation(self, capsys):
        assert main(["expansion", "--eps", "0.0,0.05"]) == 1
        assert "slope below" in capsys.readouterr().out


class TestMc:
    def test_occupation_statistics(self, configs, capsys):
        code = main(["mc", configs["ball"], "--T", "2.0", "--seed", "7"])
        assert code == 0
        out = capsys.readouterr().out
        assert "occupation mean of r2" in out
        assert "reflections=" in out

    def test_feynman_kac_cross_check(self, configs, capsys):
        code = main(
            ["mc", configs["ball"], "--T", "5.0", "--seed", "7", "--fk"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "c_star=0.50000000" in out
        assert "standard errors" in out

    def test_reflection_failure_is_a_solver_gate(self, configs, capsys):
        code = main(
            ["mc", configs["spiky"], "--T", "2.0", "--dt", "0.001",
             "--seed", "1"]
        )
        assert code == 2
        assert "solver gate failure" in capsys.readouterr().err

    def test_negative_radius_is_an_input_error(self, configs, capsys):
        assert main(["mc", configs["negative"]]) == 3
        assert "input error" in capsys.readouterr().err


class TestArgparseContract:
    def test_unknown_flag_exits_two(self):
        with pytest.raises(SystemExit) as err:
            main(["analyze", "cfg.json", "--nope"])
        assert err.value.code == 2

    def test_missing_verb_exits_two(self):
        with pytest.raises(SystemExit) as err:
            main([])
        assert err.value.code == 2

    def test_verify_requires_a_theorem(self):
        with pytest.raises(SystemExit) as err:
            main(["verify", "default"])
        assert err.value.code == 2

    def test_theorem_ids_are_a_closed_choice(self):
        with pytest.raises(SystemExit) as err:
            main(["verify", "default", "--theorem", "thm-unknown"])
        assert err.value.code == 2

    def test_parser_builds_standalone(self):
        parser = build_parser()
        args = parser.parse_args(["sweep", "--k", "3"])
        assert args.verb == "sweep"
        assert args.k == "3"
