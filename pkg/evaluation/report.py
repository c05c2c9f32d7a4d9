"""
report.py - result files for benchmark runs and experiments.

Every result CSV uses one long format, one row per scene per model per
metric, so the report command can merge files from any command:

    experiment,model,variant,scene,metric,value,windows,seed,config_hash

The average over scenes is stored as scene "AVG".
"""

#####################################
# Import Modules
#####################################

from __future__ import annotations

import json
import pathlib
from typing import Iterable, Sequence

import pandas as pd

from evaluation.benchmark import EvalReport
from utils.utils_logger import logger

RESULT_COLUMNS = [
    "experiment",
    "model",
    "variant",
    "scene",
    "metric",
    "value",
    "windows",
    "seed",
    "config_hash",
]
AVERAGE_ROW = "AVG"
FLOAT_FORMAT = "%.6f"

#####################################
# Rows
#####################################


def report_rows(
    report: EvalReport,
    experiment: str,
    config_hash: str,
    variant: str | None = None,
) -> list[dict]:
    variant = variant or report.metadata.get("variant", "")
    rows = []
    for result in report.scenes.values():
        for metric, value in (("ADE", result.ade), ("FDE", result.fde)):
            rows.append(
                {
                    "experiment": experiment,
                    "model": report.model,
                    "variant": variant,
                    "scene": result.scene,
                    "metric": metric,
                    "value": value,
                    "windows": result.windows,
                    "seed": report.seed,
                    "config_hash": config_hash,
                }
            )
    for metric, value in (("ADE", report.average_ade), ("FDE", report.average_fde)):
        rows.append(
            {
                "experiment": experiment,
                "model": report.model,
                "variant": variant,
                "scene": AVERAGE_ROW,
                "metric": metric,
                "value": value,
                "windows": report.total_windows,
                "seed": report.seed,
                "config_hash": config_hash,
            }
        )
    return rows


def reports_frame(
    reports: Iterable[EvalReport], experiment: str, config_hash: str
) -> pd.DataFrame:
    rows = [row for report in reports for row in report_rows(report, experiment, config_hash)]
    return pd.DataFrame(rows, columns=RESULT_COLUMNS)


#####################################
# Writers
#####################################


def write_csv(path: pathlib.Path, frame: pd.DataFrame) -> pathlib.Path:
    """Comma-delimited with a header row and fixed float formatting."""
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_json(path: pathlib.Path, payload: dict) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_text(path: pathlib.Path, text: str) -> pathlib.Path:
    path = pathlib.Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def reports_payload(
    reports: Sequence[EvalReport], experiment: str, config_hash: str, config: dict
) -> dict:
    """Structured export carrying the full protocol metadata."""
    return {
        "experiment": experiment,
        "config_hash": config_hash,
        "config": config,
        "reports": [
            {
                "model": r.model,
                "seed": r.seed,
                "metadata": r.metadata,
                "scenes": {
                    name: {"ADE": s.ade, "FDE": s.fde, "windows": s.windows}
                    for name, s in r.scenes.items()
                },
                "average": {"ADE": r.average_ade, "FDE": r.average_fde},
            }
            for r in reports
        ],
    }
