"""Deterministic CSV and JSON-lines serialization.

Floats are written with 17 significant digits (full round-trip),
infinities as the marker string "inf", integers as plain integers.  No
field produced here ever needs RFC-4180 quoting, so rows are plain
comma joins and the byte stream depends only on the values.
"""

from __future__ import annotations

import json
import math

FORMAT_CSV = "csv"
FORMAT_JSONL = "jsonl"


def format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    v = float(value)
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def _jsonable(value):
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def write_table(stream, headers, rows, fmt: str = FORMAT_CSV) -> None:
    """Write rows (sequences aligned with headers) as CSV or JSON lines."""
    if fmt == FORMAT_CSV:
        stream.write(",".join(headers) + "\n")
        for row in rows:
            stream.write(",".join(format_value(v) for v in row) + "\n")
    elif fmt == FORMAT_JSONL:
        for row in rows:
            record = {k: _jsonable(v) for k, v in zip(headers, row)}
            stream.write(json.dumps(record, separators=(",", ":")) + "\n")
    else:
        raise ValueError(f"unknown output format {fmt!r}")


MONTECARLO_HEADERS = ("draw", "flux_ratio_sq", "s_tilde", "pinsker_rhs",
                      "main_rhs", "strengthened_rhs", "epsilon", "redraws")
SPINPAIR_HEADERS = ("t", "flux", "flux_analytic", "two_phi_sq", "onsager",
                    "s_tilde")
SATURATION_HEADERS = ("a", "tn_sq_over_4", "B_of_s_tilde", "abs_diff")
VERIFY_HEADERS = ("suite", "checks", "violations", "min_slack")


def montecarlo_rows(records):
    for r in records:
        yield (r.draw, r.flux_ratio_sq, r.s_tilde, r.pinsker_rhs,
               r.main_rhs, r.strengthened_rhs, r.epsilon, r.redraws)


def spinpair_rows(points):
    for p in points:
        yield (p.t, p.flux, p.flux_analytic, p.two_phi_sq, p.onsager, p.s_tilde)


def saturation_rows(samples):
    for s in samples:
        yield (s.log_odds_gap, 0.25 * s.trace_norm * s.trace_norm,
               s.bound_value, s.gap)


def verify_rows(suites):
    for s in suites:
        yield (s.name, s.checks, s.violations, s.min_slack)
