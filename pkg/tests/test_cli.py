import csv
import io
import json
import math

import pytest

from optosteer import ConfigError, NonPhysicalState
from optosteer.cli import (
    ReducedBlock,
    RunConfig,
    main,
    parse_config,
    render_config,
    run,
)

REDUCED_DOC = """
[reduced]
c1 = 15
c2 = 35
nth1 = 0.5
nth2 = 1
r = 1
gamma_hz = 140

[run]
mode = sweep
grid_points = 11

[output]
format = csv
"""

PHYSICAL_DOC = """
[physical]
cavity_freq1_hz = 5.26e14
cavity_freq2_hz = 5.26e14
laser_freq1_hz = 2.82e14
laser_freq2_hz = 2.82e14
length1_m = 25e-3
length2_m = 25e-3
kappa1_hz = 215e3
kappa2_hz = 215e3
power1_w = 5e-3
power2_w = 11e-3
mass1_kg = 1.45e-7
mass2_kg = 1.45e-7
mech_freq_hz = 947e3
gamma_hz = 140
r = 1
nth1 = 0.5
nth2 = 1

[run]
mode = regime
"""


def run_to_strings(cfg):
    out, err = io.StringIO(), io.StringIO()
    code = run(cfg, out=out, err=err)
    return code, out.getvalue(), err.getvalue()


class TestParseConfig:
    def test_reduced_document(self):
        cfg = parse_config(REDUCED_DOC)
        assert cfg.reduced == ReducedBlock(15.0, 35.0, 0.5, 1.0, 1.0, 140.0)
        assert cfg.physical is None
        assert cfg.mode == "sweep"
        assert cfg.grid_points == 11
        rp = cfg.reduced.to_params()
        assert rp.gamma == pytest.approx(2 * math.pi * 140.0, rel=1e-15)

    def test_physical_document(self):
        cfg = parse_config(PHYSICAL_DOC)
        p = cfg.physical.to_params()
        assert p.arm1.kappa == pytest.approx(2 * math.pi * 215e3, rel=1e-15)
        assert p.arm2.power == 11e-3

    def test_empty_document_lists_missing_keys(self):
        with pytest.raises(ConfigError) as excinfo:
            parse_config("[reduced]\nc1 = 15\n")
        missing = [p for p in excinfo.value.problems if "missing" in p]
        assert len(missing) == 5
        assert any("[reduced] gamma_hz" in p for p in missing)

    def test_both_blocks_rejected(self):
        doc = REDUCED_DOC + "\n[physical]\nr = 1\n"
        with pytest.raises(ConfigError) as excinfo:
            parse_config(doc)
        assert any("exclusive blocks" in p for p in excinfo.value.problems)

    def test_unknown_key_rejected(self):
        doc = REDUCED_DOC.replace("mode = sweep", "mode = sweep\ntypo_key = 3")
        with pytest.raises(ConfigError) as excinfo:
            parse_config(doc)
        assert any("typo_key" in p for p in excinfo.value.problems)

    def test_unknown_section_rejected(self):
        with pytest.raises(ConfigError):
            parse_config(REDUCED_DOC + "\n[extra]\nx = 1\n")

    def test_bad_number_reported_with_path(self):
        doc = REDUCED_DOC.replace("c1 = 15", "c1 = fifteen")
        with pytest.raises(ConfigError) as excinfo:
            parse_config(doc)
        assert any("[reduced] c1" in p for p in excinfo.value.problems)

    def test_out_of_range_values_rejected(self):
        doc = REDUCED_DOC.replace("grid_points = 11", "grid_points = 1")
        with pytest.raises(ConfigError):
            parse_config(doc)

    def test_out_of_range_block_values_are_config_errors(self):
        doc = REDUCED_DOC.replace("c1 = 15", "c1 = -5")
        with pytest.raises(ConfigError) as excinfo:
            parse_config(doc)
        assert any("[reduced]" in p for p in excinfo.value.problems)

    def test_malformed_document(self):
        with pytest.raises(ConfigError):
            parse_config("not an ini document")


class TestRenderRoundTrip:
    def test_reduced_round_trip(self):
        cfg = parse_config(REDUCED_DOC)
        assert parse_config(render_config(cfg)) == cfg

    def test_physical_round_trip(self):
        cfg = parse_config(PHYSICAL_DOC)
        assert parse_config(render_config(cfg)) == cfg

    def test_round_trip_with_every_optional_field(self):
        cfg = RunConfig(
            mode="eval",
            reduced=ReducedBlock(1.25, 2.5, 0.125, 0.0625, 0.3, 141.7),
            grid_start=0.25,
            grid_stop=4.5,
            grid_points=321,
            epsilon=2e-8,
            gamma_t=0.125,
            panel="2a",
            out_format="json",
            out_path="result.json",
        )
        assert parse_config(render_config(cfg)) == cfg

    def test_awkward_floats_survive(self):
        cfg = RunConfig(
            mode="sweep",
            reduced=ReducedBlock(1 / 3, 2 / 7, 0.1, 0.2, 1.1, 139.97),
        )
        assert parse_config(render_config(cfg)) == cfg


class TestRunModes:
    def test_sweep_csv_shape_and_purity(self):
        cfg = parse_config(REDUCED_DOC)
        code, out, err = run_to_strings(cfg)
        assert code == 0
        assert err == ""
        lines = out.splitlines()
        assert lines[0] == "gamma_t,g_ab,g_ba,g_delta,e2"
        assert len(lines) == 12
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 11
        for row in rows:
            for field in ("gamma_t", "g_ab", "g_ba", "g_delta", "e2"):
                float(row[field])  # parseable numbers only

    def test_eval_at_time_zero_is_all_zero(self):
        doc = REDUCED_DOC.replace("mode = sweep", "mode = eval\ngamma_t = 0")
        code, out, _ = run_to_strings(parse_config(doc))
        assert code == 0
        assert out.splitlines()[1] == "0,0,0,0,0"

    def test_eval_known_point(self):
        doc = REDUCED_DOC.replace("mode = sweep", "mode = eval\ngamma_t = 0.2")
        _, out, _ = run_to_strings(parse_config(doc))
        row = out.splitlines()[1].split(",")
        assert float(row[1]) == pytest.approx(0.0820275988, abs=1e-9)
        assert float(row[4]) == pytest.approx(0.2450891339, abs=1e-9)

    def test_json_output(self):
        doc = REDUCED_DOC.replace("format = csv", "format = json")
        code, out, _ = run_to_strings(parse_config(doc))
        assert code == 0
        payload = json.loads(out)
        assert len(payload) == 11
        assert set(payload[0]) == {"gamma_t", "g_ab", "g_ba", "g_delta", "e2"}

    def test_figure_panel(self):
        cfg = RunConfig(mode="figure", panel="2a")
        code, out, err = run_to_strings(cfg)
        assert code == 0 and err == ""
        assert len(out.splitlines()) == 1002

    def test_stationary_mode(self):
        doc = REDUCED_DOC.replace("mode = sweep", "mode = stationary")
        code, out, _ = run_to_strings(parse_config(doc))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "v11,v33,v13,g_ab,g_ba,g_delta,e2"
        v11 = float(lines[1].split(",")[0])
        assert v11 == pytest.approx(1.8260292302, abs=1e-9)

    def test_regime_mode(self):
        code, out, _ = run_to_strings(parse_config(PHYSICAL_DOC))
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "check,ratio,status"
        table = {row.split(",")[0]: row.split(",") for row in lines[1:]}
        assert table["sideband_resolution_1"][2] == "warn"
        assert float(table["sideband_resolution_1"][1]) == pytest.approx(
            947.0 / 215.0, rel=1e-12
        )
        assert table["overall"][2] == "warn"

    def test_regime_requires_physical_block(self):
        doc = REDUCED_DOC.replace("mode = sweep", "mode = regime")
        code, out, err = run_to_strings(parse_config(doc))
        assert code == 1
        assert out == ""
        assert "physical" in err

    def test_twelve_significant_digits(self):
        doc = REDUCED_DOC.replace("mode = sweep", "mode = eval\ngamma_t = 0.2")
        _, out, _ = run_to_strings(parse_config(doc))
        cell = out.splitlines()[1].split(",")[4]
        assert len(cell.replace("-", "").replace(".", "").lstrip("0")) == 12

    def test_output_file(self, tmp_path):
        target = tmp_path / "data.csv"
        cfg = RunConfig(mode="figure", panel="3a", out_path=str(target))
        code, out, _ = run_to_strings(cfg)
        assert code == 0
        assert out == ""
        text = target.read_text()
        assert text.startswith("gamma_t,")
        assert "\r" not in text


class TestExitCodes:
    def test_success_is_zero(self):
        assert run_to_strings(RunConfig(mode="figure", panel="2a"))[0] == 0

    def test_config_error_is_one(self):
        code, out, err = run_to_strings(RunConfig())
        assert code == 1 and out == "" and "mode" in err

    def test_missing_parameter_block_is_one(self):
        code, _, err = run_to_strings(RunConfig(mode="sweep"))
        assert code == 1
        assert "block" in err

    def test_computational_error_is_two(self, monkeypatch):
        import optosteer.cli as cli_module

        def explode(*args, **kwargs):
            raise NonPhysicalState("injected fault")

        monkeypatch.setattr(cli_module, "sweep_time", explode)
        cfg = parse_config(REDUCED_DOC)
        code, out, err = run_to_strings(cfg)
        assert code == 2
        assert out == ""
        assert "injected fault" in err

    def test_bad_flag_is_one(self, capsys):
        assert main(["--mode", "warp"]) == 1
        assert "config error" in capsys.readouterr().err


class TestMain:
    def test_figure_via_flags(self, capsys):
        assert main(["--mode", "figure", "--panel", "2a"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("gamma_t,")
        assert len(out.splitlines()) == 1002

    def test_flags_override_config(self, tmp_path, capsys):
        path = tmp_path / "cfg.ini"
        path.write_text(REDUCED_DOC)
        assert main(["--config", str(path), "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert len(payload) == 11

    def test_missing_config_file(self, capsys):
        assert main(["--config", "/nonexistent/path.ini"]) == 1
        assert "cannot read config" in capsys.readouterr().err

    def test_unknown_panel_is_config_error(self, capsys):
        assert main(["--mode", "figure", "--panel", "7q"]) == 1
        assert "panel" in capsys.readouterr().err

    def test_epsilon_flag(self, capsys):
        # a huge epsilon suppresses every classification, data unchanged
        assert main(["--mode", "figure", "--panel", "2a", "--epsilon", "10"]) == 0
        first = capsys.readouterr().out
        assert main(["--mode", "figure", "--panel", "2a"]) == 0
        second = capsys.readouterr().out
        assert first == second
