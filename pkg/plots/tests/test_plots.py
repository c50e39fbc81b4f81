"""Plots package: schema reading, stats parity with the harness, rendering."""

import json
import subprocess
import sys

import numpy as np
import pytest

from cgpplots import (
    MissingDataError,
    ParseError,
    PlotJob,
    boxplot,
    group_stats,
    read_results,
)
from cgpplots.sweep import sweep_grid, sweep_heatmap

HEADER = ("algorithm,cell_id,n_nodes,base_rate,scheme,k,floor,replicate,seed,"
          "success,node_evals,generations,duration_ms")


def make_csv(tmp_path, rows, name="results.csv"):
    path = tmp_path / name
    path.write_text(HEADER + "\n" + "".join(row + "\n" for row in rows))
    return str(path)


def result_row(algorithm="multi_constant", cell="n10_r0.1", replicate=0,
               node_evals=1000, success=True, scheme="constant", k="", floor=""):
    return (f"{algorithm},{cell},10,0.1,{scheme},{k},{floor},{replicate},42,"
            f"{'true' if success else 'false'},{node_evals},25,3")


def spread_rows(algorithm, efforts, success=None):
    return [
        result_row(algorithm=algorithm, cell=f"{algorithm}_cell", replicate=i,
                   node_evals=e,
                   success=True if success is None else success[i])
        for i, e in enumerate(efforts)
    ]


# --- schema ----------------------------------------------------------------


def test_read_results_happy_path(tmp_path):
    path = make_csv(tmp_path, [result_row(node_evals=777, k="2", floor="0.01",
                                          scheme="exponential")])
    (row,) = read_results(path)
    assert row.node_evals == 777
    assert row.k == 2.0
    assert row.floor == 0.01
    assert row.success is True


def test_read_results_rejects_wrong_header(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("a,b,c\n1,2,3\n")
    with pytest.raises(ParseError):
        read_results(str(path))


def test_read_results_rejects_bad_cell(tmp_path):
    path = make_csv(tmp_path, [result_row(node_evals="not_a_number")])
    with pytest.raises(ParseError, match="line 2"):
        read_results(str(path))


def test_read_results_rejects_short_row(tmp_path):
    path = make_csv(tmp_path, ["multi_constant,x,10"])
    with pytest.raises(ParseError, match="columns"):
        read_results(str(path))


# --- stats -----------------------------------------------------------------


def test_group_stats_matches_numpy_quartiles(tmp_path):
    efforts = [100, 300, 200, 500, 400, 250]
    path = make_csv(tmp_path, spread_rows("multi_linear", efforts))
    stats = group_stats(read_results(path), "algorithm", "node_evals")
    s = stats["multi_linear"]
    q1, med, q3 = np.percentile(efforts, [25, 50, 75], method="linear")
    assert s["q1"] == q1
    assert s["median"] == med
    assert s["q3"] == q3
    assert s["min"] == 100
    assert s["max"] == 500
    assert s["success_rate"] == 1.0


def test_group_stats_whiskers_and_fliers(tmp_path):
    # 10 tight values plus one far outlier: whisker stops at the tight max
    efforts = [100, 110, 120, 130, 140, 150, 160, 170, 180, 190, 5000]
    path = make_csv(tmp_path, spread_rows("single_task", efforts))
    s = group_stats(read_results(path), "algorithm", "node_evals")["single_task"]
    assert s["whishi"] == 190
    assert s["fliers"] == [5000]


def test_group_stats_marks_failures(tmp_path):
    path = make_csv(tmp_path, spread_rows(
        "multi_constant", [1000, 50_000], success=[True, False]))
    s = group_stats(read_results(path), "algorithm", "node_evals")["multi_constant"]
    assert s["success_rate"] == 0.5
    assert s["failed_values"] == [50_000.0]


# --- box plot --------------------------------------------------------------


def test_boxplot_renders_one_box_per_algorithm(tmp_path):
    rows = []
    for algorithm in ("single_task", "multi_constant", "multi_linear",
                      "multi_exponential"):
        rows += spread_rows(algorithm, list(range(1000, 1050)))
    path = make_csv(tmp_path, rows)
    out = tmp_path / "box.png"
    stats = boxplot(PlotJob(input_path=path, output_path=str(out)))
    assert len(stats) == 4
    assert out.exists() and out.stat().st_size > 0


def test_boxplot_degenerate_distribution(tmp_path):
    path = make_csv(tmp_path, spread_rows("multi_constant", [500] * 8))
    out = tmp_path / "degenerate.png"
    stats = boxplot(PlotJob(input_path=path, output_path=str(out)))
    s = stats["multi_constant"]
    assert s["q1"] == s["median"] == s["q3"] == 500
    assert out.exists() and out.stat().st_size > 0


def test_boxplot_empty_file_is_missing_data(tmp_path):
    path = make_csv(tmp_path, [])
    with pytest.raises(MissingDataError):
        boxplot(PlotJob(input_path=path, output_path=str(tmp_path / "x.png")))


def test_plotjob_validation(tmp_path):
    with pytest.raises(ValueError):
        PlotJob(input_path="r.csv", output_path="o.png", scale="sqrt")
    with pytest.raises(ValueError):
        PlotJob(input_path="r.csv", output_path="o.png", metric="seed")


def test_boxplot_log_scale(tmp_path):
    path = make_csv(tmp_path, spread_rows("single_task", [10, 100, 1000, 10000]))
    out = tmp_path / "log.png"
    boxplot(PlotJob(input_path=path, output_path=str(out), scale="log"))
    assert out.exists()


# --- cross-check against the harness stats command --------------------------


def test_medians_match_harness_stats(tmp_path):
    rng = np.random.default_rng(7)
    rows = []
    for algorithm in ("single_task", "multi_exponential"):
        efforts = [int(v) for v in rng.integers(5_000, 500_000, size=21)]
        rows += spread_rows(algorithm, efforts)
    path = make_csv(tmp_path, rows)

    proc = subprocess.run(
        [sys.executable, "-m", "multicgp.harness.cli", "stats", path, "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    harness = {g["algorithm"]: g for g in json.loads(proc.stdout)["groups"]}

    stats = group_stats(read_results(path), "algorithm", "node_evals")
    for algorithm, s in stats.items():
        for field in ("q1", "median", "q3", "min", "max", "mean", "success_rate"):
            assert s[field] == harness[algorithm][field], (algorithm, field)


def test_renders_on_real_compare_output(tmp_path):
    # end-to-end: run the harness compare command, render its CSV, and check
    # our quartiles against the stats command on the same file
    config = tmp_path / "compare.toml"
    config.write_text(
        "\n".join(
            [
                'algorithms = ["single_task", "multi_exponential"]',
                "replicates = 3",
                "master_seed = 99",
                "budget = 2000000",
                f'results_path = "{tmp_path / "real.csv"}"',
                f'manifest_path = "{tmp_path / "real-manifest.json"}"',
                "[tuned.single_task]",
                "n_nodes = 15",
                "base_rate = 0.3",
                "[tuned.multi_exponential]",
                "n_nodes = 40",
                "base_rate = 0.6",
                "k = 10.0",
                "floor = 0.0",
            ]
        )
    )
    proc = subprocess.run(
        [sys.executable, "-m", "multicgp.harness.cli", "compare", str(config)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    csv_path = str(tmp_path / "real.csv")

    out = tmp_path / "real.png"
    stats = boxplot(PlotJob(input_path=csv_path, output_path=str(out)))
    assert out.exists() and out.stat().st_size > 0

    proc = subprocess.run(
        [sys.executable, "-m", "multicgp.harness.cli", "stats", csv_path, "--json"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0, proc.stderr
    harness = {g["algorithm"]: g for g in json.loads(proc.stdout)["groups"]}
    for algorithm, s in stats.items():
        for field in ("q1", "median", "q3"):
            assert s[field] == harness[algorithm][field], (algorithm, field)


# --- sweep heatmap -----------------------------------------------------------


def sweep_rows():
    rows = []
    for n in (10, 20):
        for rate in (0.05, 0.1):
            for rep in range(5):
                rows.append(
                    f"multi_constant,n{n}_r{rate},{n},{rate},constant,,,{rep},1,"
                    f"true,{n * 100 + rep},9,1"
                )
    return rows


def test_sweep_grid_values(tmp_path):
    path = make_csv(tmp_path, sweep_rows())
    n_values, r_values, medians, success = sweep_grid(
        read_results(path), "multi_constant")
    assert n_values == [10, 20]
    assert r_values == [0.05, 0.1]
    assert medians[0][0] == 1002  # median of 1000..1004
    assert medians[1][1] == 2002
    assert success.min() == 1.0


def test_sweep_heatmap_renders(tmp_path):
    path = make_csv(tmp_path, sweep_rows())
    out = tmp_path / "sweep.png"
    sweep_heatmap(path, str(out))
    assert out.exists() and out.stat().st_size > 0


def test_sweep_grid_missing_algorithm(tmp_path):
    path = make_csv(tmp_path, sweep_rows())
    with pytest.raises(MissingDataError):
        sweep_grid(read_results(path), "single_task")


# --- CLI ---------------------------------------------------------------------


def test_cli_effort_and_sweep(tmp_path, capsys):
    from cgpplots.cli import main_effort, main_sweep

    path = make_csv(tmp_path, spread_rows("multi_linear", [1, 2, 3, 4, 5]))
    assert main_effort([path, "-o", str(tmp_path / "e.png")]) == 0
    assert main_sweep([path, "-o", str(tmp_path / "s.png")]) == 0
    assert main_effort([str(tmp_path / "absent.csv"), "-o", "x.png"]) == 1
    capsys.readouterr()
