"""Per-experiment statistics and the tabular form of trial records."""
from __future__ import annotations

from typing import Any, Sequence

import numpy as np
import pandas as pd

from mobile_gossip.config import CSV_COLUMNS, PHI_TRAJECTORY_POINTS
from mobile_gossip.engine import TrialRecord


def downsample(values: Sequence[int], points: int = PHI_TRAJECTORY_POINTS) -> list[int]:
    """At most *points* evenly spaced values, always keeping the first and last."""
    if len(values) <= points:
        return list(values)
    idx = np.unique(np.linspace(0, len(values) - 1, points).round().astype(int))
    return [int(values[i]) for i in idx]


def records_frame(records: Sequence[TrialRecord]) -> pd.DataFrame:
    """Fixed columns first, then algorithm-specific extras in sorted order."""
    rows = []
    extra_columns: set[str] = set()
    for record in records:
        row = {
            "trial": record.trial,
            "completion_round": record.completion_round,
            "eps_completion_round": record.eps_completion_round,
            "dnf": int(record.dnf),
            "connections": record.connections,
            "bits_total": record.bits_total,
            "trace_hash": record.trace_hash,
        }
        row.update(record.extras)
        extra_columns.update(record.extras)
        rows.append(row)

    frame = pd.DataFrame(rows, columns=CSV_COLUMNS + sorted(extra_columns))
    for column in ["completion_round", "eps_completion_round", *sorted(extra_columns)]:
        if _is_optional_int(row.get(column) for row in rows):
            frame[column] = frame[column].astype("Int64")
    return frame


def _is_optional_int(values) -> bool:
    """True when every value is an integer or None, so the column should print without decimals."""
    return all(
        v is None or (isinstance(v, (int, np.integer)) and not isinstance(v, (bool, np.bool_)))
        for v in values
    )


def _stats(values: pd.Series) -> dict[str, float | None]:
    if values.empty:
        return {"median": None, "mean": None, "p95": None}
    return {
        "median": float(values.median()),
        "mean": float(values.mean()),
        "p95": float(values.quantile(0.95)),
    }


def summarize(records: Sequence[TrialRecord]) -> dict[str, Any]:
    """Median / mean / p95 completion rounds over finished trials, plus the success fraction."""
    frame = records_frame(records)
    finished = frame["completion_round"].dropna().astype(float)
    summary: dict[str, Any] = {
        "trials": len(frame),
        "success_fraction": float(len(finished) / len(frame)) if len(frame) else 0.0,
        "completion_round": _stats(finished),
        "mean_connections": float(frame["connections"].mean()) if len(frame) else None,
        "mean_bits": float(frame["bits_total"].mean()) if len(frame) else None,
    }
    eps_done = frame["eps_completion_round"].dropna().astype(float)
    if len(eps_done):
        summary["eps_completion_round"] = _stats(eps_done)
    return summary
