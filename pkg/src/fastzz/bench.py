"""Per-phase timing of the pipeline over a ladder of filtration sizes."""
from __future__ import annotations

import csv
import io
import resource
import time
from dataclasses import asdict, dataclass
from typing import Callable, TextIO

from .barcode import convert_barcode
from .conversion import convert_filt
from .filtration import ZigzagFiltration, close_filtration, parse_ops, validate
from .reduction import reduce

# slack allowed between the time ratio and the size ratio of two ladder steps
LINEAR_SLACK = 2.0
SOFT_TIME_LIMIT = 120.0
SOFT_MEMORY_MB = 8192


def peak_rss_mb() -> float:
    # ru_maxrss is in KiB on Linux
    return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / 1024


@dataclass
class BenchRow:
    family: str
    m: int
    n: int
    repetitiveness: float
    max_complex: int
    parse_s: float
    convert_s: float
    reduce_s: float
    map_s: float
    total_s: float
    peak_rss_mb: float


def _best_of(repeat: int, fn: Callable):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def bench_one(f: ZigzagFiltration, family: str, repeat: int = 3) -> BenchRow:
    """Time parse, convert, reduce and map on ``f``.

    Parse, convert and map are linear-time and take the best of ``repeat``
    runs to damp timer noise; reduce runs once.
    """
    text = f.to_text()
    parse_s, f = _best_of(repeat, lambda: parse_ops(io.StringIO(text)))
    report = validate(f)
    if not report:
        raise ValueError(f"invalid filtration at {report}")
    f = close_filtration(f)
    convert_s, (D, reg) = _best_of(repeat, lambda: convert_filt(f))
    t = time.perf_counter()
    result = reduce(D)
    reduce_s = time.perf_counter() - t
    map_s, bars = _best_of(repeat, lambda: convert_barcode(result, reg))
    if 2 * len(bars) != len(f):
        raise RuntimeError(f"{len(bars)} intervals for length {len(f)}")
    return BenchRow(
        family=family,
        m=len(f),
        n=reg.n,
        repetitiveness=round(f.repetitiveness(), 4),
        max_complex=report.max_size,
        parse_s=parse_s,
        convert_s=convert_s,
        reduce_s=reduce_s,
        map_s=map_s,
        total_s=parse_s + convert_s + reduce_s + map_s,
        peak_rss_mb=round(peak_rss_mb(), 1),
    )


def write_csv(rows: list[BenchRow], out: TextIO, header: bool = True) -> None:
    fields = list(BenchRow.__dataclass_fields__)
    w = csv.DictWriter(out, fieldnames=fields, lineterminator="\n")
    if header:
        w.writeheader()
    for r in rows:
        d = asdict(r)
        for k in ("parse_s", "convert_s", "reduce_s", "map_s", "total_s"):
            d[k] = f"{d[k]:.6f}"
        w.writerow(d)


def linear_scaling(rows: list[BenchRow], slack: float = LINEAR_SLACK) -> list[tuple[int, int, float]]:
    """(m_small, m_large, ratio) per consecutive ladder step.

    ``ratio`` is the growth of convert+map time divided by the growth of m; the
    step is linear within ``slack`` when 1/slack <= ratio <= slack.
    """
    out = []
    for a, b in zip(rows, rows[1:]):
        ta, tb = a.convert_s + a.map_s, b.convert_s + b.map_s
        out.append((a.m, b.m, (tb / ta) / (b.m / a.m)))
    return out


def within_slack(ratio: float, slack: float = LINEAR_SLACK) -> bool:
    return 1 / slack <= ratio <= slack
