"""
Test the wcgkit command line: exit codes, every subcommand and reproducible reports
"""
import json
import sys
from pathlib import Path

import numpy as np
import pytest
import tifffile

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent))

from wcgkit.main import EXIT_OK, EXIT_RUNTIME, EXIT_USAGE, run
from wcgkit.utils import read_csv_report

QUIET = ["--log-level", "WARNING"]


def wcg(*argv) -> int:
    return run(QUIET + [str(a) for a in argv])


@pytest.fixture(scope="module")
def workspace(tmp_path_factory):
    """Small corpus plus its characterize table"""
    root = tmp_path_factory.mktemp("cli")
    corpus = root / "corpus"
    assert wcg("gen-corpus", "--out-dir", corpus, "--sweeps", 12, "--in-gamut", 2, "--noise", 2,
               "--mosaics", 2, "--size", 24, "--seed", 3) == EXIT_OK
    assert wcg("characterize", "--input-dir", corpus, "--output", root / "features.csv") == EXIT_OK
    return root


def test_usage_errors():
    assert run([]) == EXIT_USAGE
    assert run(["unknown"]) == EXIT_USAGE
    assert run(["characterize", "--input-dir", "x"]) == EXIT_USAGE
    assert run(["characterize", "--input-dir", "x", "--output", "y.csv", "--ref", "NotAGamut"]) == EXIT_USAGE
    assert run(["select", "--input", "a.csv", "--output", "b.json", "--feature", "brightness"]) == EXIT_USAGE
    assert run(["--version"]) == EXIT_OK


def test_runtime_errors(tmp_path):
    assert wcg("map", "--op", "clip", "--src", "P3", "--dst", "Rec709",
               "--in", tmp_path / "missing.png", "--out", tmp_path / "out.png") == EXIT_RUNTIME
    assert wcg("characterize", "--input-dir", tmp_path / "nowhere", "--output", tmp_path / "f.csv") == EXIT_RUNTIME
    assert wcg("characterize", "--input-dir", tmp_path, "--output", tmp_path / "f.csv",
               "--ref", "Rec709", "--targets", "P3") == EXIT_RUNTIME


def test_gen_corpus_writes_manifest(workspace):
    corpus = workspace / "corpus"
    manifest = json.loads((corpus / "corpus.json").read_text())
    assert len(manifest["files"]) == 18
    assert all((corpus / entry["name"]).is_file() for entry in manifest["files"])


def test_characterize_table(workspace):
    table, metadata = read_csv_report(workspace / "features.csv")
    assert list(table.columns) == ["path", "d_1", "d_2", "cssim_1", "cssim_2"]
    assert len(table) == 18
    assert metadata["format"] == "wcg-characterize/1"
    assert metadata["config"]["target_names"] == ["Rec709", "Toy"]
    assert ((table["d_1"] >= 0) & (table["d_2"] <= 2)).all()


def test_characterize_json_output(workspace, tmp_path):
    out = tmp_path / "features.json"
    assert wcg("characterize", "--input-dir", workspace / "corpus", "--output", out, "--targets", "Rec709") == EXIT_OK
    payload = json.loads(out.read_text())
    assert len(payload["rows"]) == 18
    assert set(payload["rows"][0]) == {"path", "d_1", "cssim_1"}


def test_criteria(workspace, tmp_path):
    out = tmp_path / "criteria.json"
    assert wcg("criteria", "--input", workspace / "features.csv", "--output", out) == EXIT_OK
    payload = json.loads(out.read_text())
    assert set(payload["per_target"]) == {"Rec709", "Toy"}
    assert payload["bins"] == 10
    assert 0.0 <= payload["total"]["coverage"] <= 1.0
    assert 0.0 <= payload["total"]["uniformity"] <= 1.0


def test_select_with_robustness(workspace, tmp_path):
    out = tmp_path / "selection.json"
    assert wcg("select", "--input", workspace / "features.csv", "--output", out,
               "--k", 2, "--per-cluster", 2, "--seed", 5, "--robustness", "--trials", 4) == EXIT_OK
    payload = json.loads(out.read_text())
    assert len(payload["selected"]) == 4
    assert len(payload["clusters"]) == 2
    assert len(payload["pcc_trials"]) + len(payload["excluded_trials"]) == 4


def test_select_colorfulness_and_compare(workspace, tmp_path):
    out = tmp_path / "colorful.json"
    assert wcg("select", "--input", workspace / "features.csv", "--output", out, "--feature", "colorfulness",
               "--image-dir", workspace / "corpus", "--k", 2, "--per-cluster", 1) == EXIT_OK
    assert len(json.loads(out.read_text())["selected"]) == 2

    assert wcg("select", "--input", workspace / "features.csv", "--output", out,
               "--feature", "colorfulness") == EXIT_RUNTIME

    compared = tmp_path / "compare.json"
    assert wcg("select", "--input", workspace / "features.csv", "--output", compared,
               "--k", 2, "--per-cluster", 2, "--compare", "--trials", 5) == EXIT_OK
    payload = json.loads(compared.read_text())
    assert payload["comparison"]["baseline"]["feature"] == "random"


def test_map(workspace, tmp_path):
    out = tmp_path / "mapped.png"
    assert wcg("map", "--op", "compress", "--src", "P3", "--dst", "Toy",
               "--in", workspace / "corpus" / "sweep_006.png", "--out", out) == EXIT_OK
    assert out.is_file()

    legacy = tmp_path / "legacy.png"
    assert wcg("map", "--op", "clip", "--src", "P3", "--dst", "Rec709",
               "--input", workspace / "corpus" / "mosaic_000.png", "--output", legacy) == EXIT_OK
    assert legacy.is_file()


def test_map_keeps_linear_float_tiff_linear(tmp_path):
    source, out = tmp_path / "linear.tif", tmp_path / "mapped.tif"
    values = 0.1 + 0.8 * np.random.default_rng(0).random((16, 16, 3))
    tifffile.imwrite(str(source), values.astype(np.float32), photometric="rgb")

    assert wcg("map", "--op", "clip", "--src", "P3", "--dst", "P3", "--in", source, "--out", out) == EXIT_OK
    codes = tifffile.imread(str(out))
    assert codes.dtype == np.uint16
    np.testing.assert_allclose(codes / 65535.0, values, atol=1e-4)


def test_benchmark_and_stats(workspace, tmp_path):
    gains, report = tmp_path / "gains.csv", tmp_path / "benchmark.json"
    assert wcg("benchmark", "--input-dir", workspace / "corpus", "--output-csv", gains, "--output-json", report,
               "--source", "P3", "--k", 2, "--per-cluster", 1, "--trials", 3, "--seed", 2) == EXIT_OK
    table, metadata = read_csv_report(gains)
    assert list(table.columns) == ["image_id", "target", "cid_a", "cid_b", "gain"]
    assert metadata["metric_version"] == "cid-cielab-5factor/2"
    payload = json.loads(report.read_text())
    assert len(payload["trial_statistics"]) == 3 * 3 * 3

    stats = tmp_path / "stats.json"
    assert wcg("stats", "--input", workspace / "features.csv", "--column-a", "d_2", "--column-b", "d_1",
               "--alternative", "greater", "--output", stats) == EXIT_OK
    result = json.loads(stats.read_text())
    assert {"welch_t", "f_test", "pearson"} <= set(result)
    assert result["welch_t"]["alternative"] == "greater"

    assert wcg("stats", "--input", workspace / "features.csv", "--column-a", "nope", "--column-b", "d_1",
               "--output", stats) == EXIT_RUNTIME


def test_reports_are_reproducible(workspace, tmp_path):
    outputs = []
    for run_dir in (tmp_path / "one", tmp_path / "two"):
        run_dir.mkdir()
        assert wcg("characterize", "--input-dir", workspace / "corpus", "--output", run_dir / "features.csv") == EXIT_OK
        assert wcg("criteria", "--input", run_dir / "features.csv", "--output", run_dir / "criteria.json") == EXIT_OK
        assert wcg("select", "--input", run_dir / "features.csv", "--output", run_dir / "selection.json",
                   "--k", 2, "--robustness", "--trials", 3) == EXIT_OK
        outputs.append(run_dir)
    for name in ("features.csv", "criteria.json", "selection.json"):
        assert (outputs[0] / name).read_bytes() == (outputs[1] / name).read_bytes()
