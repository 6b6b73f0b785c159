"""CSV and JSON result files."""
from __future__ import annotations

import json
import logging
import os
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

import pandas as pd

from mobile_gossip.config import CSV_SCHEMA_VERSION, OUTPUT_DIR_ENV
from mobile_gossip.engine import TrialRecord
from mobile_gossip.harness.models import ExperimentResult
from mobile_gossip.harness.summary import downsample, records_frame

logger = logging.getLogger(__name__)


def resolve_output(path: str | Path) -> Path:
    """Relative paths land in $MOBILE_GOSSIP_OUTPUT_DIR when it is set."""
    path = Path(path)
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not path.is_absolute():
        path = Path(base) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    return path


def write_csv(frame: pd.DataFrame, path: str | Path) -> Path:
    path = resolve_output(path)
    frame.to_csv(path, index=False, lineterminator="\n")
    logger.info("wrote %d rows to %s", len(frame), path)
    return path


def write_json(document: dict[str, Any], path: str | Path) -> Path:
    path = resolve_output(path)
    with path.open("w", encoding="utf-8") as fh:
        json.dump(document, fh, indent=2, sort_keys=True, default=str)
        fh.write("\n")
    return path


def summary_document(results: Sequence[ExperimentResult], deterministic: bool) -> dict[str, Any]:
    document: dict[str, Any] = {
        "schema_version": CSV_SCHEMA_VERSION,
        "experiments": [
            {
                "config": result.config.to_dict(),
                "summary": result.summary,
                "phi_trajectories": {str(r.trial): downsample(r.phi_trajectory) for r in result.records},
            }
            for result in results
        ],
    }
    if not deterministic:
        document["generated_at"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return document


def write_results(
        results: ExperimentResult | Sequence[ExperimentResult],
        csv_path: str | Path | None,
        json_path: str | Path | None = None,
        deterministic: bool = False,
) -> pd.DataFrame:
    """
    Write the records table (and optionally the summary document). Several
    results, as produced by a sweep, are stacked with a leading ``n`` column.
    """
    if isinstance(results, ExperimentResult):
        frame = records_frame(results.records)
        results = [results]
    else:
        frames = [records_frame(r.records).assign(n=r.config.n) for r in results]
        frame = pd.concat(frames, ignore_index=True)
        frame = frame[["n"] + [c for c in frame.columns if c != "n"]]

    if csv_path:
        write_csv(frame, csv_path)
    if json_path:
        write_json(summary_document(results, deterministic), json_path)
    return frame


def trace_document(record: TrialRecord) -> dict[str, Any]:
    return {
        "trial": record.trial,
        "completion_round": record.completion_round,
        "eps_completion_round": record.eps_completion_round,
        "trace_hash": record.trace_hash,
        "phi_trajectory": record.phi_trajectory,
        "extras": record.extras,
        "rounds": [outcome.to_dict() for outcome in record.outcomes or []],
    }
