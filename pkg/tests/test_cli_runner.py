"""Config parsing, validation diagnostics, CSV outputs, and exit codes."""
from __future__ import annotations

import csv
import hashlib
import json
import math
from pathlib import Path

import numpy as np
import pytest

from wignerlab.cli_runner import (
    COMMANDS,
    ConfigError,
    EnsembleConfig,
    ExperimentConfig,
    main,
    parse_config_text,
    run,
    validate,
)
from wignerlab.ensembles import sample_trial
from wignerlab.hermitian_core import eigenvalues_desc
from wignerlab.spectral_measures import SemicircleLaw, esd, levy_distance

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def make_config(command: str, out_dir: str, **overrides: str) -> ExperimentConfig:
    """A small, fast config for `command` with optional raw-key overrides."""
    mapping = {
        "command": command,
        "sizes": "16",
        "trials": "2",
        "seed": "42",
        "out": out_dir,
        "ensemble.law": "rademacher",
        "ensemble.preset": "wigner_unit",
    }
    if command in ("moments", "walks"):
        mapping.setdefault("moments.k", "2,4")
    if command == "stieltjes":
        mapping.setdefault("stieltjes.z", "1j")
    if command == "concentration":
        mapping["trials"] = "100"
        mapping.setdefault("concentration.t", "0.5,1.0")
    mapping.update(overrides)
    return ExperimentConfig.from_mapping(mapping)


def read_csv(path: Path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# ---------------------------------------------------------------------------
# config text parsing
# ---------------------------------------------------------------------------


def test_parse_basic_key_values():
    text = "sizes = 64, 128\ntrials=4\n  seed =  7  \n"
    assert parse_config_text(text) == {"sizes": "64, 128", "trials": "4", "seed": "7"}


def test_parse_comments_and_blank_lines():
    text = "# full-line comment\n\nseed = 3  # trailing comment\n   \n# another\n"
    assert parse_config_text(text) == {"seed": "3"}


def test_parse_later_keys_override():
    assert parse_config_text("seed = 1\nseed = 2\n") == {"seed": "2"}


def test_parse_value_may_contain_equals():
    assert parse_config_text("note = a=b\n") == {"note": "a=b"}


def test_parse_rejects_line_without_equals():
    with pytest.raises(ConfigError, match="line 2: expected 'key = value'"):
        parse_config_text("seed = 1\nnot a pair\n")


def test_parse_rejects_empty_key():
    with pytest.raises(ConfigError, match="line 1: empty key"):
        parse_config_text("= 3\n")


# ---------------------------------------------------------------------------
# mapping -> ExperimentConfig
# ---------------------------------------------------------------------------


def test_from_mapping_defaults():
    config = ExperimentConfig.from_mapping({"command": "simulate", "sizes": "8"})
    assert config.command == "simulate"
    assert config.sizes == (8,)
    assert config.trials == 1
    assert config.seed == 0
    assert config.out_dir == "results"
    assert config.threads == 1
    assert config.k_list == ()
    assert config.exact_oracle is False
    assert config.bandwidth == pytest.approx(1e-2)
    assert config.c_bound == pytest.approx(1.0)
    assert config.eps_list == (0.125, 0.25, 0.5, 1.0)
    assert config.ramp_p == pytest.approx(-0.5)
    assert config.ramp_q == pytest.approx(0.5)
    assert config.eta is None  # "auto" unless a number is given


def test_from_mapping_parses_lists_and_grid():
    config = ExperimentConfig.from_mapping(
        {
            "command": "stieltjes",
            "sizes": "16, 32",
            "stieltjes.z": "1j, 0.5+1j",
            "stieltjes.grid": "-3, 3, 0.01",
            "conditions.eps": "0.5, 1.0",
        }
    )
    assert config.sizes == (16, 32)
    assert config.z_list == (1j, 0.5 + 1j)
    assert config.grid == (-3.0, 3.0, 0.01)
    assert config.eps_list == (0.5, 1.0)


def test_from_mapping_k_list_from_either_section():
    by_moments = ExperimentConfig.from_mapping({"command": "moments", "moments.k": "2,4"})
    by_walks = ExperimentConfig.from_mapping({"command": "walks", "walks.k": "3,5"})
    assert by_moments.k_list == (2, 4)
    assert by_walks.k_list == (3, 5)


def test_from_mapping_c_bound_prefers_conditions_over_reduce():
    both = ExperimentConfig.from_mapping({"conditions.c": "2.0", "reduce.c": "3.0"})
    only_reduce = ExperimentConfig.from_mapping({"reduce.c": "3.0"})
    assert both.c_bound == pytest.approx(2.0)
    assert only_reduce.c_bound == pytest.approx(3.0)


def test_from_mapping_eta_auto_and_number():
    assert ExperimentConfig.from_mapping({"reduce.eta": "auto"}).eta is None
    assert ExperimentConfig.from_mapping({"reduce.eta": "0.25"}).eta == pytest.approx(0.25)
    with pytest.raises(ConfigError, match="reduce.eta: expected number or 'auto'"):
        ExperimentConfig.from_mapping({"reduce.eta": "sometimes"})


def test_from_mapping_grid_needs_three_numbers():
    with pytest.raises(ConfigError, match="stieltjes.grid: expected 'min, max, step'"):
        ExperimentConfig.from_mapping({"stieltjes.grid": "-3, 3"})


def test_from_mapping_type_errors():
    with pytest.raises(ConfigError, match="trials: expected integer"):
        ExperimentConfig.from_mapping({"trials": "many"})
    with pytest.raises(ConfigError, match="sizes: expected integers"):
        ExperimentConfig.from_mapping({"sizes": "64, big"})
    with pytest.raises(ConfigError, match="stieltjes.bandwidth: expected number"):
        ExperimentConfig.from_mapping({"stieltjes.bandwidth": "wide"})
    with pytest.raises(ConfigError, match="moments.exact_oracle: expected boolean"):
        ExperimentConfig.from_mapping({"moments.exact_oracle": "maybe"})
    with pytest.raises(ConfigError, match="stieltjes.z: expected complex numbers"):
        ExperimentConfig.from_mapping({"stieltjes.z": "up"})


def test_from_mapping_echoes_raw_items_sorted():
    config = ExperimentConfig.from_mapping({"seed": "9", "command": "simulate"})
    assert config.raw == (("command", "simulate"), ("seed", "9"))


# ---------------------------------------------------------------------------
# ensemble block
# ---------------------------------------------------------------------------


def test_ensemble_build_preset_wigner_unit():
    spec = EnsembleConfig(preset="wigner_unit", law_kind="rademacher").build(8, 3)
    assert spec.n == 8
    assert spec.seed == 3
    assert spec.law.kind == "rademacher_scaled"
    assert spec.profile.matrix(8) == pytest.approx(np.full((8, 8), 1 / 8))


def test_ensemble_build_preset_heavy_tail():
    spec = EnsembleConfig(preset="heavy_tail").build(16, 0)
    assert spec.law.kind == "pareto_symmetric"
    assert spec.law.alpha == pytest.approx(2.0)


def test_ensemble_build_explicit_banded_profile():
    cfg = EnsembleConfig(
        law_kind="gaussian_real",
        profile_kind="banded",
        band_width=1,
        band_inside="0.5",
        band_outside="0",
    )
    spec = cfg.build(4, 0)
    assert spec.profile.matrix(4)[0].tolist() == [0.5, 0.5, 0.0, 0.0]


def test_ensemble_build_variance_accepts_one_over_n():
    spec = EnsembleConfig(law_kind="gaussian_real", variance="1/n").build(10, 0)
    assert spec.profile.matrix(10)[0, 0] == pytest.approx(0.1)
    with pytest.raises(ConfigError, match="expected number or '1/n'"):
        EnsembleConfig(law_kind="gaussian_real", variance="2/n").build(10, 0)


def test_ensemble_build_pareto_requires_parameters():
    spec = EnsembleConfig(law_kind="pareto_symmetric", alpha=2.5, scale=1.0).build(8, 0)
    assert spec.law.alpha == pytest.approx(2.5)
    with pytest.raises(ValueError, match="pareto_symmetric requires alpha > 0"):
        EnsembleConfig(law_kind="pareto_symmetric").build(8, 0)


def test_ensemble_build_unknown_names_fail():
    with pytest.raises(ConfigError, match="unknown ensemble preset 'goe'"):
        EnsembleConfig(preset="goe").build(8, 0)
    with pytest.raises(ConfigError, match="unknown entry law 'cauchy'"):
        EnsembleConfig(law_kind="cauchy").build(8, 0)
    with pytest.raises(ConfigError, match="unknown profile kind 'circulant'"):
        EnsembleConfig(law_kind="gaussian_real", profile_kind="circulant").build(8, 0)
    with pytest.raises(ConfigError, match="unknown diagonal law 'pareto_symmetric'"):
        EnsembleConfig(law_kind="gaussian_real", diagonal_law="pareto_symmetric").build(8, 0)


# ---------------------------------------------------------------------------
# validation diagnostics
# ---------------------------------------------------------------------------


def test_validate_empty_sizes():
    config = ExperimentConfig.from_mapping({"command": "simulate"})
    assert "sizes must be nonempty" in validate(config)


def test_validate_oracle_requires_finite_moments(tmp_path):
    config = make_config(
        "moments",
        str(tmp_path),
        **{
            "ensemble.law": "pareto_symmetric",
            "ensemble.alpha": "2.5",
            "ensemble.scale": "1.0",
            "moments.k": "2,4",
            "moments.exact_oracle": "true",
            "sizes": "6",
        },
    )
    assert validate(config) == ["oracle requires finite moments"]


def test_validate_bundled_configs_are_runnable():
    for path in sorted(CONFIG_DIR.glob("*.cfg")):
        mapping = parse_config_text(path.read_text())
        mapping["command"] = path.stem.split("_")[0]
        config = ExperimentConfig.from_mapping(mapping)
        assert validate(config) == [], f"{path.name}: {validate(config)}"


def test_validate_unknown_command_short_circuits():
    config = ExperimentConfig.from_mapping({"command": "render"})
    assert validate(config) == ["unknown command: 'render'"]


def test_validate_walks_needs_no_sizes():
    config = ExperimentConfig.from_mapping({"command": "walks", "walks.k": "2,4"})
    assert validate(config) == []


def test_validate_reports_all_problems_at_once():
    config = ExperimentConfig.from_mapping(
        {"command": "moments", "sizes": "0", "trials": "0", "threads": "0"}
    )
    diags = validate(config)
    assert "sizes must be positive" in diags
    assert "trials must be at least 1" in diags
    assert "threads must be at least 1" in diags
    assert "moments.k must be nonempty" in diags


def test_validate_bad_ensemble_is_reported_per_size():
    config = ExperimentConfig.from_mapping(
        {"command": "simulate", "sizes": "4", "ensemble.preset": "heavy_tail"}
    )
    diags = validate(config)
    assert len(diags) == 1
    assert diags[0].startswith("ensemble at n=4: heavy_tail_spec needs n >= 8")


def test_validate_oracle_size_limits(tmp_path):
    config = make_config(
        "moments",
        str(tmp_path),
        **{"sizes": "8", "moments.k": "2,10", "moments.exact_oracle": "true"},
    )
    diags = validate(config)
    assert "exact oracle limited to n <= 6" in diags
    assert "exact oracle limited to k <= 8" in diags


def test_validate_walk_census_limit(tmp_path):
    config = make_config("walks", str(tmp_path), **{"moments.k": "2,14"})
    assert "walk census limited to k <= 12" in validate(config)


def test_validate_stieltjes_points_and_grid(tmp_path):
    config = make_config(
        "stieltjes",
        str(tmp_path),
        **{"stieltjes.z": "1, 1j", "stieltjes.grid": "3, -3, 0.1", "stieltjes.bandwidth": "0"},
    )
    diags = validate(config)
    assert "stieltjes points must lie in the upper half plane" in diags
    assert "stieltjes.grid must satisfy min < max and step > 0" in diags
    assert "stieltjes.bandwidth must be positive" in diags
    empty = make_config("stieltjes", str(tmp_path), **{"stieltjes.z": ""})
    assert "stieltjes.z must be nonempty" in validate(empty)


def test_validate_conditions_parameters(tmp_path):
    config = make_config(
        "conditions", str(tmp_path), **{"conditions.c": "0", "conditions.eps": "0.5, 0"}
    )
    diags = validate(config)
    assert "conditions.c must be positive" in diags
    assert "conditions.eps must be positive" in diags


def test_validate_concentration_parameters(tmp_path):
    config = make_config(
        "concentration",
        str(tmp_path),
        **{
            "trials": "99",
            "concentration.t": "0.5, -1",
            "concentration.ramp_p": "0.5",
            "concentration.ramp_q": "-0.5",
            "concentration.bernoulli_count": "10",
            "concentration.bernoulli_p": "1.5",
        },
    )
    diags = validate(config)
    assert "concentration.t must be positive" in diags
    assert "concentration ramp requires ramp_p < ramp_q" in diags
    assert "concentration needs at least 100 trials" in diags
    assert "concentration.bernoulli_p must lie in [0, 1]" in diags


def test_validate_reduce_parameters(tmp_path):
    config = make_config(
        "reduce", str(tmp_path), **{"reduce.eta": "-1", "reduce.c": "0"}
    )
    diags = validate(config)
    assert "reduce.eta must be positive or 'auto'" in diags
    assert "reduce.c must be positive" in diags


# ---------------------------------------------------------------------------
# run(): outputs, documented examples, determinism
# ---------------------------------------------------------------------------


def test_run_moments_single_row_near_unit_variance(tmp_path):
    config = make_config(
        "moments",
        str(tmp_path),
        **{"sizes": "64", "trials": "10", "moments.k": "2", "ensemble.law": "gaussian_real"},
    )
    manifest = run(config)
    header, rows = read_csv(tmp_path / "moments.csv")
    assert header == ["n", "k", "trials", "empirical", "catalan", "abs_err"]
    assert len(rows) == 1
    n, k, trials, empirical, catalan, abs_err = rows[0]
    assert (n, k, trials) == ("64", "2", "10")
    assert float(catalan) == 1.0
    assert abs(float(empirical) - 1.0) < 0.2
    assert float(abs_err) == pytest.approx(abs(float(empirical) - 1.0))
    assert manifest.command == "moments"


def test_run_walks_census_double_tree_counts(tmp_path):
    config = make_config("walks", str(tmp_path), **{"moments.k": "2,4,6"})
    run(config)
    header, rows = read_csv(tmp_path / "walks.csv")
    assert header == ["k", "t", "class_id", "sequence", "classification"]
    doubles = {k: 0 for k in ("2", "4", "6")}
    for k, _t, _cid, _seq, label in rows:
        if label == "double_tree":
            doubles[k] += 1
    assert doubles == {"2": 1, "4": 2, "6": 5}
    census_sizes = {"2": 2, "4": 15, "6": 203}  # Bell numbers for k-step walks
    for k, expected in census_sizes.items():
        assert sum(1 for row in rows if row[0] == k) == expected


def test_run_same_config_twice_identical_checksums(tmp_path):
    config_a = make_config("simulate", str(tmp_path / "a"))
    config_b = make_config("simulate", str(tmp_path / "b"))
    first, second = run(config_a), run(config_b)
    assert first.checksums == second.checksums


def test_run_thread_count_does_not_change_bytes(tmp_path):
    serial = make_config("simulate", str(tmp_path / "serial"), threads="1", sizes="16,24")
    pooled = make_config("simulate", str(tmp_path / "pooled"), threads="3", sizes="16,24")
    run(serial)
    run(pooled)
    assert (tmp_path / "serial" / "simulate.csv").read_bytes() == (
        tmp_path / "pooled" / "simulate.csv"
    ).read_bytes()


def test_run_simulate_csv_round_trips_doubles(tmp_path):
    config = make_config("simulate", str(tmp_path), sizes="16", trials="2")
    run(config)
    header, rows = read_csv(tmp_path / "simulate.csv")
    assert header == ["n", "trial", "levy_to_sc", "kolmogorov_to_sc"]
    spec = config.ensemble.build(16, config.seed)
    sc = SemicircleLaw()
    for row in rows:
        trial = int(row[1])
        expected = levy_distance(esd(eigenvalues_desc(sample_trial(spec, trial))), sc)
        assert float(row[2]) == expected  # 17 significant digits are lossless


def test_run_rejects_invalid_config(tmp_path):
    config = make_config("simulate", str(tmp_path), sizes="")
    with pytest.raises(ConfigError, match="sizes must be nonempty"):
        run(config)
    assert not (tmp_path / "manifest.json").exists()


def test_run_manifest_contents(tmp_path):
    config = make_config("simulate", str(tmp_path))
    manifest = run(config)
    on_disk = json.loads((tmp_path / "manifest.json").read_text())
    assert on_disk["command"] == "simulate"
    assert on_disk["master_seed"] == 42
    assert on_disk["config"] == dict(config.raw)
    assert on_disk["wall_time_s"] >= 0
    assert on_disk["version"] == manifest.version
    digest = hashlib.sha256((tmp_path / "simulate.csv").read_bytes()).hexdigest()
    assert on_disk["checksums"] == {"simulate.csv": digest}


def test_run_moments_oracle_emits_second_csv(tmp_path):
    config = make_config(
        "moments",
        str(tmp_path),
        **{"sizes": "4", "trials": "200", "moments.k": "2", "moments.exact_oracle": "true"},
    )
    run(config)
    header, rows = read_csv(tmp_path / "moments_oracle.csv")
    assert header == ["n", "k", "walk_sum", "empirical", "abs_err"]
    [(n, k, walk_sum, empirical, abs_err)] = rows
    assert float(walk_sum) == 1.0  # unit-variance rows make the k=2 moment exact
    assert abs(float(empirical) - 1.0) < 0.25
    assert float(abs_err) == pytest.approx(abs(float(empirical) - 1.0))


def test_run_stieltjes_outputs_points_and_density(tmp_path):
    config = make_config(
        "stieltjes",
        str(tmp_path),
        **{
            "sizes": "32",
            "trials": "4",
            "stieltjes.z": "1j, 2j",
            "stieltjes.grid": "-2.5, 2.5, 0.5",
            "stieltjes.bandwidth": "0.05",
        },
    )
    manifest = run(config)
    assert [name for name, _ in manifest.checksums] == ["stieltjes.csv", "density_n32.csv"]
    header, rows = read_csv(tmp_path / "stieltjes.csv")
    assert header == ["n", "z_re", "z_im", "s_re", "s_im", "sc_re", "sc_im", "residual"]
    assert [(r[1], r[2]) for r in rows] == [("0", "1"), ("0", "2")]
    golden = (math.sqrt(5.0) - 1.0) / 2.0
    assert float(rows[0][6]) == pytest.approx(golden, abs=1e-12)  # Im s_sc(i)
    assert all(float(r[7]) < 0.5 for r in rows)  # fixed-point residual stays moderate
    dheader, drows = read_csv(tmp_path / "density_n32.csv")
    assert dheader == ["a", "density"]
    assert len(drows) == 11  # -2.5 .. 2.5 inclusive at step 0.5
    assert all(float(r[1]) >= 0 for r in drows)


def test_run_conditions_row_per_size_and_eps(tmp_path):
    config = make_config(
        "conditions",
        str(tmp_path),
        **{"sizes": "16, 32", "conditions.eps": "0.25, 0.5", "ensemble.law": "gaussian_real"},
    )
    run(config)
    header, rows = read_csv(tmp_path / "conditions.csv")
    assert header == [
        "n",
        "c",
        "eps",
        "var_row_sum",
        "row_excess",
        "lindeberg",
        "tail_prob_row_max",
        "trunc_mean_row_max",
        "trunc_var_row_worst",
        "finite_variance",
    ]
    assert [(r[0], r[2]) for r in rows] == [
        ("16", "0.25"),
        ("16", "0.5"),
        ("32", "0.25"),
        ("32", "0.5"),
    ]
    for row in rows:
        assert float(row[3]) == 0.0  # unit rows deviate from 1 by nothing
        assert float(row[4]) == 0.0  # and never exceed C = 1
        assert row[9] == "1"  # booleans serialize as 0/1


def test_run_concentration_rows_and_bernoulli(tmp_path):
    config = make_config(
        "concentration",
        str(tmp_path),
        **{
            "sizes": "8",
            "concentration.t": "0.5, 1.0",
            "concentration.bernoulli_count": "20",
            "concentration.bernoulli_p": "0.05",
            "concentration.bernoulli_x": "4.0",
        },
    )
    run(config)
    header, rows = read_csv(tmp_path / "concentration.csv")
    assert header == ["statistic", "t", "empirical", "bound", "trials", "n", "seed"]
    assert [r[0] for r in rows] == ["ramp(-0.5,0.5)", "ramp(-0.5,0.5)", "bernoulli_sum"]
    assert [r[4] for r in rows] == ["100", "100", "100"]
    assert rows[-1][5] == "20"  # bernoulli row reports the coin count
    for row in rows:
        assert 0.0 <= float(row[2]) <= 1.0


def test_run_reduce_trace_columns(tmp_path):
    config = make_config(
        "reduce",
        str(tmp_path),
        **{
            "sizes": "16",
            "trials": "3",
            "ensemble.preset": "heavy_tail",
            "reduce.eta": "1.0",
            "reduce.c": "1.0",
        },
    )
    run(config)
    header, rows = read_csv(tmp_path / "reduce.csv")
    assert header == [
        "n",
        "trial",
        "eta",
        "truncated_count",
        "centering_norm_sq",
        "delta_truncate",
        "delta_centralize",
        "delta_rescale",
        "coeff_min",
        "coeff_max",
    ]
    assert len(rows) == 3
    for row in rows:
        assert float(row[2]) == 1.0
        assert int(row[3]) >= 0
        assert all(float(x) >= 0 for x in row[4:8])
        assert 0.0 <= float(row[8]) <= float(row[9]) <= 1.0


def test_run_every_command_emits_header_and_manifest(tmp_path):
    for command in COMMANDS:
        out = tmp_path / command
        run(make_config(command, str(out)))
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["checksums"], command
        for name in manifest["checksums"]:
            header, _rows = read_csv(out / name)
            assert header, f"{command}/{name} is missing a header row"


# ---------------------------------------------------------------------------
# command line entry point
# ---------------------------------------------------------------------------


def write_config(tmp_path: Path, **extra: str) -> Path:
    lines = [
        "sizes = 16",
        "trials = 2",
        "seed = 42",
        f"out = {tmp_path / 'results'}",
        "ensemble.preset = wigner_unit",
        "ensemble.law = rademacher",
    ]
    lines += [f"{key} = {value}" for key, value in extra.items()]
    path = tmp_path / "run.cfg"
    path.write_text("\n".join(lines) + "\n")
    return path


def test_main_success_prints_summary(tmp_path, capsys):
    path = write_config(tmp_path)
    assert main(["simulate", "--config", str(path)]) == 0
    out = capsys.readouterr().out
    assert "simulate: wrote simulate.csv + manifest.json" in out
    assert "(seed 42)" in out
    assert (tmp_path / "results" / "simulate.csv").exists()


def test_main_unknown_command_exits_2(tmp_path):
    path = write_config(tmp_path)
    with pytest.raises(SystemExit) as excinfo:
        main(["render", "--config", str(path)])
    assert excinfo.value.code == 2


def test_main_missing_config_exits_3(tmp_path, capsys):
    assert main(["simulate", "--config", str(tmp_path / "absent.cfg")]) == 3
    assert "cannot read config" in capsys.readouterr().err


def test_main_malformed_config_exits_3(tmp_path, capsys):
    path = tmp_path / "bad.cfg"
    path.write_text("just some words\n")
    assert main(["simulate", "--config", str(path)]) == 3
    assert "expected 'key = value'" in capsys.readouterr().err


def test_main_failed_validation_exits_3(tmp_path, capsys):
    path = write_config(tmp_path, sizes="0")
    assert main(["simulate", "--config", str(path)]) == 3
    assert "sizes must be positive" in capsys.readouterr().err


def test_main_unwritable_output_exits_4(tmp_path, capsys):
    blocker = tmp_path / "occupied"
    blocker.write_text("a file, not a directory\n")
    path = write_config(tmp_path, out=str(blocker / "nested"))
    assert main(["simulate", "--config", str(path)]) == 4
    assert "cannot write outputs" in capsys.readouterr().err


def test_main_seed_and_out_overrides(tmp_path):
    path = write_config(tmp_path)
    other = tmp_path / "elsewhere"
    assert main(["simulate", "--config", str(path), "--seed", "7", "--out", str(other)]) == 0
    manifest = json.loads((other / "manifest.json").read_text())
    assert manifest["master_seed"] == 7
    assert manifest["config"]["seed"] == "42"  # echo keeps the file's text verbatim


def test_main_threads_env_fallback(tmp_path, monkeypatch):
    path = write_config(tmp_path)
    monkeypatch.setenv("WIGNERLAB_THREADS", "2")
    assert main(["simulate", "--config", str(path)]) == 0
    baseline = (tmp_path / "results" / "simulate.csv").read_bytes()
    monkeypatch.delenv("WIGNERLAB_THREADS")
    assert main(["simulate", "--config", str(path)]) == 0
    assert (tmp_path / "results" / "simulate.csv").read_bytes() == baseline


def test_main_rejects_non_integer_threads_env(tmp_path, monkeypatch, capsys):
    path = write_config(tmp_path)
    monkeypatch.setenv("WIGNERLAB_THREADS", "plenty")
    assert main(["simulate", "--config", str(path)]) == 3
    assert "WIGNERLAB_THREADS must be an integer" in capsys.readouterr().err


def test_main_threads_flag_beats_env(tmp_path, monkeypatch):
    path = write_config(tmp_path)
    monkeypatch.setenv("WIGNERLAB_THREADS", "plenty")  # would exit 3 if consulted
    assert main(["simulate", "--config", str(path), "--threads", "2"]) == 0
