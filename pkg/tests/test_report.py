import pandas as pd
import pytest

from evaluation.benchmark import EvalReport, SceneResult
from evaluation.report import AVERAGE_ROW, RESULT_COLUMNS, report_rows, reports_frame, write_csv
from evaluation.tables import (
    benchmark_table,
    deprivation_table,
    read_results,
    render_report,
    to_markdown,
    variant_table,
    with_recomputed_average,
)
from utils.utils_errors import ReportError


def make_report(model="OUR", seed=0, offset=0.0):
    scenes = {
        name: SceneResult(name, ade + offset, 2 * ade + offset, 10)
        for name, ade in (("ETH-Uni", 0.58), ("Hotel", 0.27), ("Zara1", 0.34))
    }
    return EvalReport(model, seed, scenes, {"variant": "Basic"})


class TestRows:
    def test_long_format_with_average(self):
        frame = reports_frame([make_report()], "benchmark", "abc123")
        assert list(frame.columns) == RESULT_COLUMNS
        assert len(frame) == 4 * 2
        average = frame[(frame["scene"] == AVERAGE_ROW) & (frame["metric"] == "ADE")]["value"].item()
        scenes = frame[(frame["scene"] != AVERAGE_ROW) & (frame["metric"] == "ADE")]["value"]
        assert average == pytest.approx(scenes.mean())
        assert set(frame["config_hash"]) == {"abc123"}

    def test_variant_override(self):
        rows = report_rows(make_report(), "priors", "h", variant="Rotations")
        assert {row["variant"] for row in rows} == {"Rotations"}

    def test_csv_bytes_are_stable(self, tmp_path):
        frame = reports_frame([make_report()], "benchmark", "h")
        first = write_csv(tmp_path / "a.csv", frame).read_bytes()
        second = write_csv(tmp_path / "b.csv", frame).read_bytes()
        assert first == second
        assert b"0.580000" in first


class TestMerging:
    def write(self, tmp_path, name, reports, experiment="benchmark"):
        return write_csv(tmp_path / name / "results.csv", reports_frame(reports, experiment, "h"))

    def test_seeds_are_merged(self, tmp_path):
        paths = [self.write(tmp_path, "a", [make_report(seed=0)]), self.write(tmp_path, "b", [make_report(seed=1)])]
        assert len(read_results(paths)) == 16

    def test_same_cell_in_two_files_conflicts(self, tmp_path):
        paths = [self.write(tmp_path, "a", [make_report()]), self.write(tmp_path, "b", [make_report(offset=0.1)])]
        with pytest.raises(ReportError) as info:
            read_results(paths)
        assert sorted(info.value.offending_files) == sorted(str(p) for p in paths)

    def test_corrupt_file_is_listed(self, tmp_path):
        good = self.write(tmp_path, "a", [make_report()])
        bad = tmp_path / "bad.csv"
        bad.write_text("model,value\nOUR,1\n")
        with pytest.raises(ReportError) as info:
            read_results([good, bad])
        assert info.value.offending_files == [str(bad)]

    def test_no_files(self):
        with pytest.raises(ReportError):
            read_results([])

    def test_recomputed_average_equals_scene_mean(self, tmp_path):
        frame = read_results([self.write(tmp_path, "a", [make_report(), make_report("Lin", offset=0.2)])])
        merged = with_recomputed_average(frame[["experiment", "model", "variant", "scene", "metric", "value"]])
        for model in ("OUR", "Lin"):
            part = merged[(merged["model"] == model) & (merged["metric"] == "FDE")]
            average = part[part["scene"] == AVERAGE_ROW]["value"].item()
            assert average == pytest.approx(part[part["scene"] != AVERAGE_ROW]["value"].mean())


class TestTables:
    def test_benchmark_table_has_one_column_per_model(self):
        frame = reports_frame([make_report(), make_report("Lin", offset=0.1)], "benchmark", "h")
        table = benchmark_table(frame)
        assert list(table.columns) == ["Scene", "Metric", "OUR", "Lin"]
        assert table["Scene"].tolist()[-2:] == [AVERAGE_ROW, AVERAGE_ROW]

    def test_variant_table_orders_priors(self):
        rows = []
        for variant, offset in (("Rotations", 0.0), ("Basic", 1.0), ("Relative", 0.5)):
            rows += report_rows(make_report("FF", offset=offset), "priors", "h", variant=variant)
        table = variant_table(pd.DataFrame(rows), "priors", ["Hotel", AVERAGE_ROW])
        assert list(table.columns) == ["Model", "Metric", "Scene", "Basic", "Relative", "Rotations"]
        assert len(table) == 2 * 2

    def test_deprivation_table_statistics(self):
        rows = []
        for length, offset in ((7, 0.0), (4, 0.01), (1, 0.02)):
            rows += report_rows(make_report("FF", offset=offset), "deprivation", "h", variant=f"history={length}")
        table = deprivation_table(pd.DataFrame(rows))
        ade = table[table["Metric"] == "ADE"].iloc[0]
        base = (0.58 + 0.27 + 0.34) / 3
        assert ade["Full History"] == pytest.approx(base)
        assert ade["History Size One"] == pytest.approx(base + 0.02)
        assert ade["sigma"] == pytest.approx(0.01)

    def test_markdown_rendering(self):
        text = to_markdown(pd.DataFrame({"Model": ["OUR"], "ADE": [0.3912]}))
        assert text.splitlines() == ["| Model | ADE |", "|---|---|", "| OUR | 0.39 |"]

    def test_report_footnotes(self):
        frame = reports_frame([make_report()], "benchmark", "h")
        text = render_report(frame, ["h"], [0, 1])
        assert "Config hash(es): h" in text
        assert "Seeds: 0, 1" in text
