"""Benchmark loop: interpolate every (triplet, method) pair and score it."""

from __future__ import annotations

import csv
import logging
import math
import multiprocessing
import time
from dataclasses import dataclass, replace

import numpy as np

from .estimate import SearchParams
from .metrics import census_distance, charbonnier, psnr, ssim
from .synthesis import METHODS, interpolate

log = logging.getLogger(__name__)

REPORT_COLUMNS = ("id", "method", "psnr_db", "ssim", "charbonnier", "census", "wall_ms")

AGGREGATE_ID = "mean"


@dataclass
class ReportRow:
    id: str
    method: str
    psnr_db: float
    ssim: float
    charbonnier: float
    census: float
    wall_ms: float


def _eval_one(triplet, method, params):
    start = time.perf_counter()
    try:
        out = interpolate(triplet.frame0, triplet.frame1, triplet.t, params, method)
        wall_ms = (time.perf_counter() - start) * 1000.0
        return ReportRow(
            id=triplet.id,
            method=method,
            psnr_db=psnr(out, triplet.gt),
            ssim=ssim(out, triplet.gt),
            charbonnier=charbonnier(out, triplet.gt),
            census=census_distance(out, triplet.gt),
            wall_ms=wall_ms,
        )
    except Exception as exc:  # keep the run going, poison only this row
        log.warning("%s/%s failed: %s", triplet.id, method, exc)
        wall_ms = (time.perf_counter() - start) * 1000.0
        nan = float("nan")
        return ReportRow(triplet.id, method, nan, nan, nan, nan, wall_ms)


def _mean(values):
    return sum(values) / len(values)


def run_benchmark(triplets, methods, params=None, threads=1):
    """Score every method on every triplet, then append per-method means.

    Row order is (triplet, method) nested in the given order and does not
    depend on threads; metric values are bit-identical for any worker
    count because each row is a pure function of its triplet.
    """
    params = (params or SearchParams()).validate()
    methods = list(methods)
    if not methods:
        raise ValueError("methods must not be empty")
    for m in methods:
        if m not in METHODS:
            raise ValueError(f"unknown method {m!r}; choose from {METHODS}")
    if not isinstance(threads, int) or threads < 1:
        raise ValueError(f"threads must be a positive int, got {threads!r}")
    tasks = [(trip, m) for trip in triplets for m in methods]
    if threads == 1 or len(tasks) <= 1:
        rows = [_eval_one(trip, m, params) for trip, m in tasks]
    else:
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(min(threads, len(tasks))) as pool:
            rows = pool.starmap(
                _eval_one, [(trip, m, params) for trip, m in tasks], chunksize=1
            )
    for m in methods:
        mine = [r for r in rows if r.method == m and r.id != AGGREGATE_ID]
        if not mine:
            continue
        rows.append(
            ReportRow(
                id=AGGREGATE_ID,
                method=m,
                psnr_db=_mean([r.psnr_db for r in mine]),
                ssim=_mean([r.ssim for r in mine]),
                charbonnier=_mean([r.charbonnier for r in mine]),
                census=_mean([r.census for r in mine]),
                wall_ms=_mean([r.wall_ms for r in mine]),
            )
        )
    return rows


def zero_timings(rows):
    """Copy rows with wall_ms forced to 0 so reports are byte-reproducible."""
    return [replace(r, wall_ms=0.0) for r in rows]


def _fmt(value):
    value = float(value)
    if math.isnan(value):
        return "nan"
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:#.6g}"


def write_report(rows, path):
    """Write rows as CSV: 6 significant digits, UTF-8, LF line endings."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for r in rows:
            writer.writerow(
                [r.id, r.method, _fmt(r.psnr_db), _fmt(r.ssim),
                 _fmt(r.charbonnier), _fmt(r.census), _fmt(r.wall_ms)]
            )


def summarize(rows):
    """Aggregate rows rendered as short text lines for the log."""
    lines = []
    for r in rows:
        if r.id == AGGREGATE_ID:
            lines.append(
                f"{r.method}: psnr {_fmt(r.psnr_db)} dB, ssim {_fmt(r.ssim)}, "
                f"charbonnier {_fmt(r.charbonnier)}, census {_fmt(r.census)}"
            )
    return lines
