"""End-to-end command-line pipeline: bench, features, analyze, report."""
import json
import pathlib
import sys

import pytest

from optscape.cli import main

STUB = str(pathlib.Path(__file__).parent / "stub_evaluator.py")

BUNDLE_FILES = [
    "analyze_manifest.json",
    "classifiers.csv",
    "ert_ratio_by_dim.csv",
    "ert_table.csv",
    "friedman_by_dim.csv",
    "mean_ranks_by_dim.csv",
    "pca_loadings.csv",
    "pca_scores.csv",
    "pca_summary.csv",
    "rank_table.csv",
    "regret_curves.csv",
]

FIGURES = [
    "ert_ratios.svg",
    "mean_ranks.svg",
    "pca_loadings.svg",
    "pca_scores.svg",
    "regret_curves.svg",
]


def write_config(tmp_path, **overrides):
    raw = {
        "problems": {"bbob": {"fids": [1, 8, 15], "iids": [1], "dims": [2]}},
        "optimizers": [{"name": "random"}, {"name": "grid"}, {"name": "cmaes"}],
        "budget_multiplier": 10,
        "replications": 3,
        "base_seed": 99,
        "output_dir": "store",
    }
    raw.update(overrides)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(raw), encoding="utf-8")
    return path


def tree_bytes(root):
    root = pathlib.Path(root)
    return {
        str(p.relative_to(root)): p.read_bytes()
        for p in sorted(root.rglob("*"))
        if p.is_file()
    }


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """One full CLI pass: bench, features, analyze, report."""
    tmp_path = tmp_path_factory.mktemp("cli")
    config = write_config(tmp_path)
    store = tmp_path / "store"
    features = tmp_path / "features.csv"
    bundle = tmp_path / "bundle"

    assert main(["bench", "--config", str(config)]) == 0
    assert main(["features", "--config", str(config), "--out", str(features)]) == 0
    assert main([
        "analyze", "--store", str(store),
        "--features", str(features), "--out", str(bundle),
    ]) == 0
    assert main(["report", "--bundle", str(bundle)]) == 0
    return tmp_path, config, store, features, bundle


def test_pipeline_artifacts(pipeline):
    _, _, store, features, bundle = pipeline
    assert len(list((store / "traces").glob("*.csv"))) == 3 * 3 * 3
    assert features.exists()
    for name in BUNDLE_FILES:
        assert (bundle / name).exists(), name
    for name in FIGURES:
        assert (bundle / "figures" / name).exists(), name


def test_bench_resume_skips_everything(pipeline, capsys):
    _, config, _, _, _ = pipeline
    assert main(["bench", "--config", str(config)]) == 0
    out = capsys.readouterr().out
    assert "completed 0 cells, skipped 27" in out


def test_analyze_regeneration_is_byte_identical(pipeline):
    tmp_path, _, store, features, bundle = pipeline
    other = tmp_path / "bundle2"
    assert main([
        "analyze", "--store", str(store),
        "--features", str(features), "--out", str(other),
    ]) == 0
    assert main(["report", "--bundle", str(other)]) == 0
    a, b = tree_bytes(bundle), tree_bytes(other)
    assert set(a) == set(b)
    for name in a:
        assert a[name] == b[name], name


def test_rank_table_covers_every_cell(pipeline):
    _, _, _, _, bundle = pipeline
    lines = (bundle / "rank_table.csv").read_text().strip().split("\n")
    assert lines[0] == "problem_id,cmaes,grid,random"
    assert len(lines) == 1 + 3  # three problems
    for line in lines[1:]:
        ranks = [float(v) for v in line.split(",")[1:]]
        assert sum(ranks) == pytest.approx(6.0)  # k(k+1)/2 for k=3


def test_manifest_pins_config_hash(pipeline):
    _, _, store, _, bundle = pipeline
    manifest = json.loads((bundle / "analyze_manifest.json").read_text())
    store_manifest = json.loads((store / "manifest.json").read_text())
    assert manifest["config_hash"] == store_manifest["config_hash"]
    assert manifest["n_records"] == 27
    assert manifest["optimizers"] == ["cmaes", "grid", "random"]


def test_missing_config_exits_2(tmp_path, capsys):
    assert main(["bench", "--config", str(tmp_path / "nope.json")]) == 2
    assert "config error" in capsys.readouterr().err


def test_invalid_config_exits_2(tmp_path, capsys):
    config = write_config(tmp_path, optimizers=[])
    assert main(["bench", "--config", str(config)]) == 2
    assert "config error" in capsys.readouterr().err


def test_failed_cell_exits_1(tmp_path, capsys):
    config = write_config(
        tmp_path,
        problems={
            "external": [
                {
                    "id": "dies",
                    "cmd": [sys.executable, STUB, "--die-on-eval"],
                    "dim": 2,
                }
            ]
        },
        optimizers=[{"name": "random"}],
        replications=1,
    )
    assert main(["bench", "--config", str(config)]) == 1
    err = capsys.readouterr().err
    assert "FAILED dies__random__r000" in err


def test_workers_flag_overrides_config(tmp_path):
    config = write_config(
        tmp_path,
        problems={"bbob": {"fids": [1], "iids": [1], "dims": [2]}},
        optimizers=[{"name": "random"}],
        replications=2,
    )
    assert main(["bench", "--config", str(config), "--workers", "2"]) == 0
    assert main(["bench", "--config", str(config), "--workers", "0"]) == 2


def test_analyze_without_store_exits_1(tmp_path, capsys):
    assert main([
        "analyze", "--store", str(tmp_path / "missing"),
        "--features", str(tmp_path / "missing.csv"), "--out", str(tmp_path / "b"),
    ]) == 1
    assert "error" in capsys.readouterr().err


def test_report_without_bundle_exits_1(tmp_path, capsys):
    assert main(["report", "--bundle", str(tmp_path / "missing")]) == 1
    assert "run analyze first" in capsys.readouterr().err
