"""
tables.py - merge result CSVs and lay them out as Markdown tables.

    benchmark   -> scenes x metric rows, one column per model
    priors      -> model x metric x {Hotel, AVG} rows, Basic/Relative/Rotations columns
    deprivation -> model x metric rows, full history / history size one / sigma
    neighbors   -> model x metric rows, Basic/History/Future columns (AVG)

Seeds of the same cell are averaged. The same cell and seed appearing in
two files is a conflict and is reported, never resolved silently.
"""

from __future__ import annotations

import pathlib
from typing import Sequence

import numpy as np
import pandas as pd

from evaluation.report import AVERAGE_ROW, RESULT_COLUMNS
from trajectories.scene_loader import BENCHMARK_SCENES
from utils.utils_errors import ReportError
from utils.utils_logger import logger

CELL_KEYS = ["experiment", "model", "variant", "scene", "metric", "seed"]
VARIANT_ORDER = {
    "priors": ["Basic", "Relative", "Rotations"],
    "neighbors": ["Basic", "History", "Future"],
}

#####################################
# Reading and Merging
#####################################


def read_results(paths: Sequence[pathlib.Path]) -> pd.DataFrame:
    """Concatenate long-format result files; corrupt or conflicting files raise ReportError."""
    if not paths:
        raise ReportError("no result files found", [])
    frames, corrupt = [], []
    for path in paths:
        try:
            frame = pd.read_csv(path, dtype={"variant": str, "model": str, "scene": str})
        except Exception as e:
            logger.error(f"Cannot read {path}: {e}")
            corrupt.append(str(path))
            continue
        missing = set(RESULT_COLUMNS) - set(frame.columns)
        if missing or frame["value"].isna().any():
            logger.error(f"{path} is not a result file (missing {sorted(missing)})")
            corrupt.append(str(path))
            continue
        frame["variant"] = frame["variant"].fillna("")
        frame["source"] = str(path)
        frames.append(frame)
    if corrupt:
        raise ReportError("corrupt result files", corrupt)

    merged = pd.concat(frames, ignore_index=True)
    duplicated = merged[merged.duplicated(CELL_KEYS, keep=False)]
    conflicting = duplicated.groupby(CELL_KEYS)["source"].nunique()
    conflicting = conflicting[conflicting > 1]
    if len(conflicting):
        first = conflicting.index[0]
        mask = np.logical_and.reduce([duplicated[k] == v for k, v in zip(CELL_KEYS, first)])
        files = sorted(duplicated.loc[mask, "source"].unique())
        raise ReportError(f"conflicting results for cell {dict(zip(CELL_KEYS, first))}", files)
    return merged


def seed_means(frame: pd.DataFrame) -> pd.DataFrame:
    keys = ["experiment", "model", "variant", "scene", "metric"]
    return frame.groupby(keys, as_index=False, sort=False)["value"].mean()


def with_recomputed_average(frame: pd.DataFrame) -> pd.DataFrame:
    """Replace AVG rows by the unweighted mean of the scene rows of the same cell."""
    keys = ["experiment", "model", "variant", "metric"]
    scenes = frame[frame["scene"] != AVERAGE_ROW]
    if scenes.empty:
        return frame
    averages = scenes.groupby(keys, as_index=False, sort=False)["value"].mean()
    averages["scene"] = AVERAGE_ROW
    return pd.concat([scenes, averages[frame.columns]], ignore_index=True)


#####################################
# Markdown
#####################################


def to_markdown(frame: pd.DataFrame, digits: int = 2) -> str:
    def cell(value) -> str:
        if isinstance(value, (float, np.floating)):
            return "-" if np.isnan(value) else f"{value:.{digits}f}"
        return str(value)

    header = "| " + " | ".join(str(c) for c in frame.columns) + " |"
    rule = "|" + "|".join("---" for _ in frame.columns) + "|"
    body = ["| " + " | ".join(cell(v) for v in row) + " |" for row in frame.itertuples(index=False)]
    return "\n".join([header, rule, *body])


def _scene_order(scenes) -> list[str]:
    known = [s for s in BENCHMARK_SCENES if s in set(scenes)]
    others = [s for s in dict.fromkeys(scenes) if s not in known and s != AVERAGE_ROW]
    return known + others + ([AVERAGE_ROW] if AVERAGE_ROW in set(scenes) else [])


def benchmark_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Scenes x metric rows, one column per model (model label includes its variant)."""
    data = frame.copy()
    data["column"] = data["model"]
    table = data.pivot_table(index=["scene", "metric"], columns="column", values="value", aggfunc="mean", sort=False)
    order = [(s, m) for s in _scene_order(data["scene"]) for m in ("ADE", "FDE") if (s, m) in table.index]
    table = table.loc[order]
    table = table[list(dict.fromkeys(data["column"]))]
    return table.reset_index().rename(columns={"scene": "Scene", "metric": "Metric"})


def variant_table(frame: pd.DataFrame, experiment: str, scenes: Sequence[str]) -> pd.DataFrame:
    data = frame[frame["scene"].isin(scenes)]
    table = data.pivot_table(index=["model", "metric", "scene"], columns="variant", values="value", aggfunc="mean", sort=False)
    variants = [v for v in VARIANT_ORDER.get(experiment, []) if v in table.columns]
    variants += [v for v in table.columns if v not in variants]
    table = table[variants].reset_index()
    return table.rename(columns={"model": "Model", "metric": "Metric", "scene": "Scene"})


def deprivation_table(frame: pd.DataFrame) -> pd.DataFrame:
    """Full history (longest), history size one (shortest) and the sample std over all lengths."""
    data = frame[frame["scene"] == AVERAGE_ROW].copy()
    data["history"] = data["variant"].str.extract(r"(\d+)").astype(float)[0]
    rows = []
    for (model, metric), group in data.groupby(["model", "metric"], sort=False):
        by_length = group.groupby("history")["value"].mean()
        rows.append(
            {
                "Model": model,
                "Metric": metric,
                "Full History": by_length.loc[by_length.index.max()],
                "History Size One": by_length.get(1.0, np.nan),
                "sigma": by_length.std(ddof=1) if len(by_length) > 1 else np.nan,
            }
        )
    return pd.DataFrame(rows)


def provenance_note(config_hashes: Sequence[str], seeds: Sequence[int]) -> str:
    """The config hash(es) and seeds a table was produced with, as one sentence pair."""
    hashes = ", ".join(sorted(set(config_hashes)))
    seed_list = ", ".join(str(s) for s in sorted(set(seeds)))
    return f"Config hash(es): {hashes}. Seeds: {seed_list}."


def render_report(frame: pd.DataFrame, config_hashes: Sequence[str], seeds: Sequence[int]) -> str:
    """Consolidated Markdown report with one section per experiment present."""
    means = with_recomputed_average(seed_means(frame))
    sections = ["# Pedestrian motion prediction benchmark report", ""]
    titles = {
        "benchmark": "Displacement errors (leave-one-out, meters)",
        "priors": "Environmental priors",
        "deprivation": "Motion history deprivation",
        "neighbors": "Neighborhood information",
    }
    for experiment in dict.fromkeys(means["experiment"]):
        part = means[means["experiment"] == experiment]
        sections.append(f"## {titles.get(experiment, experiment)}")
        sections.append("")
        if experiment == "priors":
            table = variant_table(part, experiment, ["Hotel", AVERAGE_ROW])
        elif experiment == "neighbors":
            table = variant_table(part, experiment, [AVERAGE_ROW])
        elif experiment == "deprivation":
            table = deprivation_table(part)
        else:
            table = benchmark_table(part)
        sections.append(to_markdown(table))
        sections.append("")
    sections.append(
        "Errors in meters; AVG rows are the unweighted mean of the scene rows; "
        f"sampled models report best-of-k. {provenance_note(config_hashes, seeds)}"
    )
    return "\n".join(sections) + "\n"
