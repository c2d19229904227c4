# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

import numpy as np
import pytest

from dtqwpy import cli
from dtqwpy.diagnostics import low_level_helpers as llh
from dtqwpy.diagnostics import verification


def __summary_of__(text):
    return dict(token.split("=", 1) for token in text.strip().splitlines()[-1].split())


def __read_csv__(path):
    lines = path.read_text().splitlines()
    return lines[0].split(","), [line.split(",") for line in lines[1:]]


def test_spread(tmp_path, capsys):
    out = tmp_path / "spread.csv"

    assert cli.main(["spread", "--loop-weight", "1", "--dims", "21,21", "--out", str(out)]) == 0

    header, rows = __read_csv__(out)
    assert header == ["step", "probability"]
    assert len(rows) == 51
    assert rows[0] == ["0", "1"]
    assert float(rows[1][1]) == pytest.approx(0.64)
    assert __summary_of__(capsys.readouterr().out)["center"] == "220"


def test_spread_weights_change_the_trace(tmp_path):
    traces = []
    for n in ["0", "1"]:
        out = tmp_path / ("spread" + n + ".csv")
        assert cli.main(["spread", "--loop-weight", n, "--dims", "15,15", "--out", str(out)]) == 0
        traces.append(np.array([float(p) for _, p in __read_csv__(out)[1]]))

    assert np.max(np.abs(traces[0][2:] - traces[1][2:])) > 1e-6


def test_spread_standard_coin_on_loop_slots_is_one_actual_loop(tmp_path):
    dims = ["--dims", "11,11", "--steps", "3"]
    standard = tmp_path / "standard.csv"
    weighted = tmp_path / "weighted.csv"

    argv = ["spread", "--coin", "standard-grover", "--loop-slots", "--out", str(standard)]
    assert cli.main(argv + dims) == 0
    assert cli.main(["spread", "--loop-weight", "1", "--out", str(weighted)] + dims) == 0

    standard_rows = __read_csv__(standard)[1]
    assert float(standard_rows[1][1]) == pytest.approx(0.64)
    np.testing.assert_allclose(
        [float(p) for _, p in standard_rows],
        [float(p) for _, p in __read_csv__(weighted)[1]],
        atol=1e-14,
    )


def test_spread_standard_coin_rejects_a_loop_weight():
    argv = ["spread", "--coin", "standard-grover", "--loop-weight", "0.5", "--dims", "5,5"]

    assert cli.main(argv) == cli.EXIT_USAGE


def test_search_summary_and_csv(tmp_path, capsys):
    out = tmp_path / "search.csv"

    code = cli.main(["search", "--graph", "complete", "--dims", "50", "--out", str(out)])

    summary = __summary_of__(capsys.readouterr().out)
    header, rows = __read_csv__(out)
    assert code in (0, cli.EXIT_TRUNCATED)
    assert header == ["step", "probability"]
    assert len(rows) == 10 * 8 + 1
    assert summary["command"] == "search"
    peak_step = int(summary["peak_step"])
    assert float(rows[peak_step][1]) == float(summary["peak_probability"])


def test_summary_goes_to_stderr_when_csv_is_on_stdout(capsys):
    assert cli.main(["search", "--graph", "complete", "--dims", "10", "--steps", "20"]) in (0, 3)

    captured = capsys.readouterr()
    assert captured.out.splitlines()[0] == "step,probability"
    assert len(captured.out.splitlines()) == 22
    assert "peak_probability=" in captured.err


def test_identical_runs_write_identical_files(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path in paths:
        cli.main(
            ["sweep", "--dims", "6,6", "--n-to", "0.2", "--n-step", "0.05", "--out", str(path)]
        )

    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_sweep_rows(tmp_path):
    out = tmp_path / "sweep.csv"

    assert cli.main(
        ["sweep", "--dims", "6,6", "--n-to", "0.05", "--n-step", "0.01", "--out", str(out)]
    ) in (0, 3)

    header, rows = __read_csv__(out)
    n = [float(row[0]) for row in rows]
    assert header == ["n", "peak_probability", "peak_step"]
    assert len(rows) == 6
    assert n == sorted(n)
    np.testing.assert_allclose(n, np.linspace(0.0, 0.05, 6))


def test_single_point_sweep_matches_search(tmp_path):
    sweep_out = tmp_path / "sweep.csv"
    search_out = tmp_path / "search.csv"

    cli.main(["sweep", "--dims", "8,8", "--n-to", "0", "--out", str(sweep_out)])
    cli.main(["search", "--dims", "8,8", "--loop-weight", "0", "--out", str(search_out)])

    _, sweep_rows = __read_csv__(sweep_out)
    _, search_rows = __read_csv__(search_out)
    p_peak = max(float(p) for _, p in search_rows)
    assert len(sweep_rows) == 1
    np.testing.assert_allclose(float(sweep_rows[0][1]), p_peak, atol=1e-14)


def test_scaling(tmp_path, capsys):
    out = tmp_path / "scaling.csv"

    cli.main(
        ["scaling", "--graph", "lattice2d", "--sizes", "6:10:2", "--baseline", "--out", str(out)]
    )

    header, rows = __read_csv__(out)
    summary = __summary_of__(capsys.readouterr().out)
    assert header == ["N", "peak_probability", "peak_step"]
    assert [row[0] for row in rows] == ["36", "64", "100"]
    assert "exponent" in summary
    assert "baseline_exponent" in summary


def test_config_file_and_flag_precedence(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("# search setup\ngraph = complete\ndims=30\nsteps = 12\nprogress = false\n")
    from_config = tmp_path / "config.csv"
    overridden = tmp_path / "override.csv"

    assert cli.main(["search", "--config", str(config), "--out", str(from_config)]) in (0, 3)
    assert (
        cli.main(["search", "--config", str(config), "--steps", "5", "--out", str(overridden)])
        in (0, 3)
    )

    assert len(__read_csv__(from_config)[1]) == 13
    assert len(__read_csv__(overridden)[1]) == 6


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["teleport"],
        ["search", "--graph", "hexagonal"],
        ["search", "--loop-weight", "lots"],
        ["search", "--dims", "5,5", "--target", "25"],
        ["search", "--loop-weight", "-1"],
        ["search", "--coin", "standard-grover", "--loop-weight", "0.5"],
        ["spread", "--dims", "6,6"],
        ["spread", "--graph", "complete"],
        ["scaling", "--graph", "edgelist", "--edge-list", "missing.txt"],
        ["search", "--graph", "edgelist", "--edge-list", "does-not-exist.txt"],
    ],
)
def test_usage_errors(argv, capsys):
    assert cli.main(argv) == cli.EXIT_USAGE


def test_bad_config_line(tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("dims 5,5\n")

    assert cli.main(["search", "--config", str(config)]) == cli.EXIT_USAGE


def test_edge_list_search(tmp_path, capsys):
    edges = tmp_path / "ring.txt"
    edges.write_text("\n".join(str(j) + " " + str((j + 1) % 8) for j in range(8)) + "\n")

    argv = ["search", "--graph", "edgelist", "--edge-list", str(edges), "--steps", "8"]
    assert cli.main(argv) in (0, 3)
    assert len(capsys.readouterr().out.splitlines()) == 10


def test_truncated_peak_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(
        llh,
        "find_first_peak",
        lambda trace: llh.PeakResult(t_peak=trace.size - 1, p_peak=0.1, truncated=True),
    )

    argv = ["search", "--graph", "complete", "--dims", "10", "--steps", "4"]
    assert cli.main(argv) == cli.EXIT_TRUNCATED


def test_verify_failure_exit_code(monkeypatch, capsys):
    monkeypatch.setattr(
        verification,
        "run_verification_suite",
        lambda: [verification.CheckResult("unitarity", 1.0, 1e-10)],
    )

    assert cli.main(["verify"]) == cli.EXIT_VERIFICATION_FAILED
    assert capsys.readouterr().out.splitlines()[1] == "unitarity,1,1e-10,0"


def test_parse_sizes():
    assert cli.parse_sizes("10:16:2") == [10, 12, 14, 16]
    assert cli.parse_sizes("5,7,9") == [5, 7, 9]
    assert cli.parse_sizes("3:5") == [3, 4, 5]


def test_weight_grid():
    np.testing.assert_allclose(cli.get_weight_grid(0.0, 2.0, 0.01).size, 201)
    np.testing.assert_allclose(cli.get_weight_grid(0.0, 0.0, 0.01), [0.0])
