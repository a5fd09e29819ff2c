"""Config validation, report determinism, fixture dumps, and CLI exit codes."""

import json
import os

import pytest

from virloop.cli import (
    EXIT_CONFIG,
    EXIT_FAIL,
    EXIT_PASS,
    EXIT_UNSATISFIABLE,
    load_config_data,
    main,
)
from virloop.config import (
    ConfigError,
    belem_field,
    fixture_dump,
    load_config,
    report_json,
    run_config,
    thread_count,
)
from virloop.coeff_algebra import split_algebra
from virloop.scalars import scalar


def minimal_config(**overrides):
    data = {"algebra": "trivial", "phi": {"d0": ["1"]}}
    data.update(overrides)
    return data


def tensor_config(**overrides):
    data = {
        "algebra": "split 2",
        "phi": {"d0": ["0", "1"], "c": ["0", "0"]},
        "psi": ["1", "0"],
        "alpha": "1/2",
        "beta": "1/3",
        "depth": 1,
        "window": [-4, 4],
    }
    data.update(overrides)
    return data


# -- config validation ---------------------------------------------------------


def test_load_config_defaults():
    cfg = load_config(minimal_config())
    assert cfg.depth == 2
    assert cfg.window == (-6, 6)
    assert cfg.seed == 0
    assert cfg.probes == []
    assert cfg.psi is None and cfg.alpha is None and cfg.beta is None


def test_load_config_missing_algebra_path():
    with pytest.raises(ConfigError) as err:
        load_config({"phi": {"d0": ["1"]}})
    assert err.value.path == "algebra"


def test_load_config_noncommutative_pair_named():
    table = [[[1, 0], [0, 1]], [[1, 0], [0, 0]]]
    with pytest.raises(ConfigError) as err:
        load_config(minimal_config(algebra={"table": table, "unit": [1, 0]}))
    assert err.value.path == "algebra"
    assert "commutativity" in err.value.message
    assert "e0*e1" in err.value.message


def test_load_config_phi_length_path():
    with pytest.raises(ConfigError) as err:
        load_config({"algebra": "split 2", "phi": {"d0": ["1"]}})
    assert err.value.path == "phi.d0"
    assert "expected 2 values" in err.value.message


def test_load_config_rejects_unknown_top_field():
    with pytest.raises(ConfigError) as err:
        load_config(minimal_config(depht=3))
    assert err.value.path == "depht"


def test_load_config_rejects_float_scalar():
    with pytest.raises(ConfigError) as err:
        load_config({"algebra": "trivial", "phi": {"d0": [0.5]}})
    assert err.value.path == "phi.d0[0]"


def test_load_config_alpha_without_psi():
    with pytest.raises(ConfigError) as err:
        load_config(minimal_config(alpha="1/2"))
    assert err.value.path == "alpha"


def test_load_config_probe_needs_psi():
    with pytest.raises(ConfigError) as err:
        load_config(minimal_config(probes=[{"kind": "endo", "m": 0, "k": 1}]))
    assert err.value.path == "probes[0]"


def test_load_config_unknown_probe_kind_path():
    with pytest.raises(ConfigError) as err:
        load_config(tensor_config(probes=[{"kind": "mystery"}]))
    assert err.value.path == "probes[0].kind"


def test_load_config_window_order():
    with pytest.raises(ConfigError) as err:
        load_config(minimal_config(window=[3, -3]))
    assert err.value.path == "window"


def test_load_config_bad_psi_not_character():
    with pytest.raises(ConfigError) as err:
        load_config(tensor_config(psi=["2", "0"]))
    assert err.value.path == "psi"


def test_belem_field_label_and_coords():
    algebra = split_algebra(2)
    assert belem_field(algebra, "e1", "b") == algebra.basis_elem(1)
    assert belem_field(algebra, ["1", "1"], "b") == algebra.unit
    with pytest.raises(ConfigError):
        belem_field(algebra, "e7", "b")


def test_thread_count_env_cap(monkeypatch):
    monkeypatch.delenv("VIRLOOP_THREADS", raising=False)
    assert thread_count(None) == 1
    assert thread_count(6) == 6
    monkeypatch.setenv("VIRLOOP_THREADS", "2")
    assert thread_count(None) == 2
    assert thread_count(6) == 2
    assert thread_count(1) == 1
    monkeypatch.setenv("VIRLOOP_THREADS", "junk")
    with pytest.raises(ConfigError):
        thread_count(None)


# -- report execution ------------------------------------------------------------


def test_run_config_empty_probes_dimension_tables():
    report = run_config(load_config(minimal_config(depth=2)))
    assert report["status"] == "pass"
    assert report["results"]["probes"] == []
    levels = report["results"]["verma"]["levels"]
    assert levels["2"]["dim"] == 2
    assert "timing" not in report


def test_run_config_timing_opt_in():
    report = run_config(load_config(minimal_config(depth=0)), with_timing=True)
    assert "timing" in report and report["timing"]["seconds"] >= 0


def test_run_config_deterministic_bytes():
    data = tensor_config(
        depth=2,
        seed=11,
        probes=[
            {"kind": "ladder", "b": "e0"},
            {"kind": "endo", "m": 0, "k": 2},
            {"kind": "iso-identity", "samples": 5},
        ],
    )
    first = report_json(run_config(load_config(data)))
    second = report_json(run_config(load_config(data)))
    assert first == second
    parsed = json.loads(first)
    assert parsed["status"] == "pass"


def test_run_config_aggregates_unsatisfiable():
    data = tensor_config(alpha="0", beta="0", probes=[{"kind": "endo", "m": 0, "k": 1}])
    report = run_config(load_config(data))
    assert report["status"] == "hypothesis-unsatisfiable"


def test_run_config_psi_separation_probe():
    data = tensor_config(
        phi={"d0": ["1", "2"], "c": ["0", "0"]},
        window=[-2, 2],
        probes=[{"kind": "psi-separation", "psi2": ["0", "1"]}],
    )
    report = run_config(load_config(data))
    cert = report["results"]["probes"][0]
    assert cert["status"] == "pass"
    assert cert["facts"]["witness"] == ["0", "1"]


def test_run_config_depth_reduction_with_explicit_vector():
    data = tensor_config(
        algebra="trivial",
        phi={"d0": ["1"], "c": ["0"]},
        psi=["1"],
        beta="2",
        probes=[
            {
                "kind": "depth-reduction",
                "case": "I",
                "b": "e0",
                "m": 0,
                "n": 1,
                "vector": [[1, [[1, 0]], 1, "1"]],
            }
        ],
    )
    report = run_config(load_config(data))
    cert = report["results"]["probes"][0]
    assert cert["status"] == "pass"
    assert cert["facts"]["l"] == 3


def test_run_config_iso_coeffs_probe():
    data = minimal_config(
        probes=[{"kind": "iso-coeffs", "A": "1", "b1": "2", "Q": "1", "b2": "3"}]
    )
    report = run_config(load_config(data))
    cert = report["results"]["probes"][0]
    assert cert["status"] == "pass"
    assert cert["facts"]["coefficients"]["mn_times_sum"] == "-6"
    assert cert["facts"]["perturbation_detected"] is True


# -- fixtures ---------------------------------------------------------------------


def test_fixture_dump_contents_and_determinism(tmp_path):
    cfg = load_config(
        {"algebra": "trivial", "phi": {"d0": ["1"], "c": ["0"]}, "depth": 2}
    )
    out1, out2 = tmp_path / "a", tmp_path / "b"
    files = fixture_dump(cfg, str(out1))
    fixture_dump(cfg, str(out2))
    names = sorted(os.path.basename(p) for p in files)
    assert names == [
        "actions.csv",
        "gram_level_1.csv",
        "gram_level_2.csv",
        "manifest.json",
        "radical_level_1.csv",
        "radical_level_2.csv",
    ]
    for name in names:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    gram2 = (out1 / "gram_level_2.csv").read_text().splitlines()
    assert gram2[1].endswith(",4,6")
    assert gram2[2].endswith(",6,-4")


def test_fixture_dump_depth_zero_header_only(tmp_path):
    cfg = load_config({"algebra": "trivial", "phi": {"d0": ["1"]}, "depth": 0})
    fixture_dump(cfg, str(tmp_path))
    lines = (tmp_path / "actions.csv").read_text().splitlines()
    assert lines == ["level,degree,bindex,source,target,coefficient"]
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["files"] == ["actions.csv"]


# -- CLI ----------------------------------------------------------------------------


def test_cli_demo_config_passes_and_is_byte_identical(tmp_path, capsys):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["run", "cor31-split", "--output", str(out1)]) == EXIT_PASS
    assert main(["run", "cor31-split", "--output", str(out2)]) == EXIT_PASS
    assert out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    assert report["status"] == "pass"
    kinds = [p["kind"] for p in report["results"]["probes"]]
    assert kinds == ["ladder", "endo", "iso-identity"]


def test_cli_run_stdout_report(capsys, tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(minimal_config()))
    assert main(["run", str(path)]) == EXIT_PASS
    report = json.loads(capsys.readouterr().out)
    assert report["results"]["verma"]["algebra"] == "trivial"


def test_cli_run_missing_file_is_config_error(capsys):
    assert main(["run", "/nonexistent/nowhere.json"]) == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_cli_run_invalid_json_is_config_error(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    assert main(["run", str(path)]) == EXIT_CONFIG


def test_cli_bad_flag_value_is_config_error(capsys):
    assert main(["verma", "--phi-d0", "1", "--depth", "x"]) == EXIT_CONFIG
    assert "config error" in capsys.readouterr().err


def test_cli_verma_levels(capsys):
    code = main(["verma", "--phi-d0", "1", "--phi-c", "0", "--depth", "2", "--irreducibility"])
    assert code == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["levels"]["2"] == {"dim": 2, "gram_rank": 2, "radical_dim": 0, "quotient_dim": 2}
    assert out["quotient_generates_top"] is True


def test_cli_int_module_reducible_pair_consistent(capsys):
    code = main(["int-module", "--alpha", "0", "--beta", "1", "--window", "-6", "6", "--degree", "3"])
    assert code == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["irreducible"] is False
    assert out["closure_full"] is False
    assert out["normalized"]["closure_full"] is True
    assert out["consistent"] is True


def test_cli_tensor_generation(capsys):
    code = main(
        [
            "tensor",
            "--phi-d0", "1",
            "--psi", "1",
            "--alpha", "1/2",
            "--beta", "1/3",
            "--depth", "1",
            "--window", "-2", "2",
        ]
    )
    assert code == EXIT_PASS
    out = json.loads(capsys.readouterr().out)
    assert out["generated_by_pure_tensors"] is True
    assert out["weight_space_dims"]["0"] == 2


def test_cli_endo_probe_pass(capsys):
    code = main(
        [
            "endo-probe",
            "--algebra", "split 2",
            "--phi-d0", "0", "1",
            "--psi", "1", "0",
            "--alpha", "1/2",
            "--beta", "1/3",
            "--depth", "2",
            "--m", "0",
            "--k", "2",
        ]
    )
    assert code == EXIT_PASS
    cert = json.loads(capsys.readouterr().out)
    assert cert["status"] == "pass"
    assert cert["facts"]["independence_rank"] == cert["facts"]["expected_rank"]


def test_cli_endo_probe_degenerate_exit(capsys):
    code = main(
        [
            "endo-probe",
            "--phi-d0", "1",
            "--psi", "1",
            "--alpha", "0",
            "--beta", "0",
            "--depth", "1",
            "--m", "0",
            "--k", "1",
        ]
    )
    assert code == EXIT_UNSATISFIABLE


def test_cli_x_probe_case_two(capsys):
    code = main(
        [
            "x-probe",
            "--case", "II",
            "--phi-d0", "1",
            "--psi", "1",
            "--alpha", "1/2",
            "--beta", "0",
            "--depth", "1",
            "--b", "e0",
            "--m", "1",
            "--n", "1",
        ]
    )
    assert code == EXIT_PASS
    cert = json.loads(capsys.readouterr().out)
    assert cert["facts"]["top_depth_out"] < cert["facts"]["top_depth_in"]


def test_cli_cor31_pass(capsys):
    code = main(
        [
            "cor31",
            "--algebra", "split 2",
            "--phi-d0", "0", "1",
            "--psi", "1", "0",
            "--alpha", "1/2",
            "--beta", "1/3",
            "--depth", "1",
            "--window", "-4", "4",
            "--b", "e0",
        ]
    )
    assert code == EXIT_PASS
    cert = json.loads(capsys.readouterr().out)
    assert cert["facts"]["stage_c"]["spans_coincide"] is True


def test_cli_psi_sep_witness(capsys):
    code = main(
        [
            "psi-sep",
            "--algebra", "split 2",
            "--phi-d0", "1", "2",
            "--psi1", "1", "0",
            "--psi2", "0", "1",
            "--alpha", "1/2",
            "--beta", "1/3",
            "--depth", "1",
            "--window", "-2", "2",
        ]
    )
    assert code == EXIT_PASS
    cert = json.loads(capsys.readouterr().out)
    assert cert["facts"]["witness"] == ["0", "1"]


def test_cli_iso_coeffs_frozen_sample(capsys):
    code = main(["iso-coeffs", "--A", "1", "--b1", "2", "--Q", "1", "--b2", "3"])
    assert code == EXIT_PASS
    cert = json.loads(capsys.readouterr().out)
    assert cert["facts"]["coefficients"]["mn_times_sum"] == "-6"
    assert cert["facts"]["identity_on_grid"] is True


def test_cli_iso_check_normalized_equal(capsys):
    code = main(
        [
            "iso-check",
            "--algebra", "split 2",
            "--phi1-d0", "0", "1",
            "--psi1", "1", "0",
            "--alpha1", "1/2",
            "--beta1", "1/3",
            "--phi2-d0", "0", "1",
            "--psi2", "1", "0",
            "--alpha2", "3/2",
            "--beta2", "1/3",
        ]
    )
    assert code == EXIT_PASS
    cert = json.loads(capsys.readouterr().out)
    assert cert["facts"]["isomorphic"] is True


def test_cli_iso_check_refute_attaches_separation(capsys):
    code = main(
        [
            "iso-check",
            "--algebra", "split 2",
            "--phi1-d0", "1", "2",
            "--psi1", "1", "0",
            "--alpha1", "1/2",
            "--beta1", "1/3",
            "--phi2-d0", "1", "2",
            "--psi2", "0", "1",
            "--alpha2", "1/2",
            "--beta2", "1/3",
            "--refute",
            "--depth", "1",
            "--window", "-2", "2",
        ]
    )
    assert code == EXIT_FAIL
    cert = json.loads(capsys.readouterr().out)
    assert cert["facts"]["differences"] == ["psi"]
    assert cert["facts"]["separation"]["status"] == "pass"
    assert "weight_space_dims" in cert["facts"]


def test_cli_fixtures_roundtrip(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps({"algebra": "trivial", "phi": {"d0": ["1"]}, "depth": 1}))
    code = main(["fixtures", str(cfg_path), "--out", str(tmp_path / "fx")])
    assert code == EXIT_PASS
    listed = capsys.readouterr().out.splitlines()
    assert all(os.path.exists(p) for p in listed)


def test_load_config_data_builtin_and_unknown():
    data = load_config_data("cor31-split")
    assert data["algebra"] == "split 2"
    with pytest.raises(ConfigError):
        load_config_data("no-such-builtin")


def test_cli_k_beyond_depth_is_config_error(tmp_path, capsys):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(tensor_config(probes=[{"kind": "endo", "m": 0, "k": 4}])))
    assert main(["run", str(path)]) == EXIT_CONFIG
    assert "probes[0].k" in capsys.readouterr().err
