"""Relative efficiency of kriging to cokriging on the interleaved design.

The efficiency at a grid point is ``cokrig_var / krig_var`` with both
variances computed exactly from the model. As ``n`` grows it tends to
``1 - r**2 / 2`` for every ``alpha``.
"""

from __future__ import annotations

import csv
import io
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import astuple, dataclass, fields
from itertools import product

from .covariance import BivariateModel
from .design import interleaved_design
from .exceptions import CsvFormatError, ParameterError, SweepError
from .predictor import cokrige, krige

CSV_HEADER = ("n", "alpha", "r", "krig_var", "cokrig_var", "rel_eff", "asymptote")

DEFAULT_RS = (0.2, 0.5)
DEFAULT_ALPHAS = (2.0, 4.0, 8.0)
DEFAULT_NS = tuple(range(2, 65, 2))


@dataclass(frozen=True)
class EfficiencyRecord:
    n: int
    alpha: float
    r: float
    krig_var: float
    cokrig_var: float
    rel_eff: float
    asymptote: float


def asymptotic_efficiency(r):
    """Limit of ``cokrig_var / krig_var`` as ``n -> inf``: ``1 - r^2/2``."""
    if not (math.isfinite(r) and abs(r) <= 1):
        raise ParameterError(f"r must satisfy |r| <= 1, got {r!r}")
    return 1.0 - r * r / 2.0


def relative_efficiency(n, alpha, r, sigma11=1.0, sigma22=1.0) -> EfficiencyRecord:
    model = BivariateModel(sigma11, sigma22, r, alpha)
    design = interleaved_design(n)
    kv = krige(design, model).variance
    cv = cokrige(design, model).variance
    return EfficiencyRecord(int(n), float(alpha), float(r), kv, cv, cv / kv, asymptotic_efficiency(r))


def sweep(ns, alphas, rs, sigma11=1.0, sigma22=1.0, workers=1):
    """Evaluate :func:`relative_efficiency` over the grid ``rs x alphas x ns``.

    Records come back sorted by ``(r, alpha, n)`` whatever ``workers`` is.
    A failing grid point raises :class:`SweepError` naming its coordinates.
    """
    ns, alphas, rs = list(ns), list(alphas), list(rs)
    for r in rs:
        if not (math.isfinite(r) and abs(r) < 1):
            raise ParameterError(f"sweep needs |r| < 1 (joint covariance is singular at |r| = 1), got r={r!r}")
    points = sorted(set(product(rs, alphas, ns)))

    def run(point):
        r, alpha, n = point
        try:
            return relative_efficiency(n, alpha, r, sigma11, sigma22)
        except Exception as exc:
            raise SweepError(f"grid point n={n}, alpha={alpha}, r={r} failed: {exc}") from exc

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(run, points))
    return [run(p) for p in points]


def _fmt(value):
    if isinstance(value, int):
        return str(value)
    return f"{value:.17g}"


def format_csv(records) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for rec in records:
        writer.writerow([_fmt(v) for v in astuple(rec)])
    return buf.getvalue()


def write_csv(records, path):
    with open(path, "w", newline="") as fh:
        fh.write(format_csv(records))


def parse_csv(text):
    """Parse efficiency CSV text; :class:`CsvFormatError` carries the 1-based line number."""
    lines = text.splitlines()
    if not lines:
        raise CsvFormatError("line 1: empty file, expected header", line=1)
    header = tuple(lines[0].strip().split(","))
    if header != CSV_HEADER:
        raise CsvFormatError(f"line 1: expected header {','.join(CSV_HEADER)!r}", line=1)
    records = []
    types = [f.type for f in fields(EfficiencyRecord)]
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != len(CSV_HEADER):
            raise CsvFormatError(f"line {lineno}: expected {len(CSV_HEADER)} fields, got {len(cells)}", line=lineno)
        values = []
        try:
            for cell, typ in zip(cells, types):
                values.append(int(cell) if typ in (int, "int") else float(cell))
        except ValueError as exc:
            raise CsvFormatError(f"line {lineno}: {exc}", line=lineno) from exc
        records.append(EfficiencyRecord(*values))
    return records


def read_csv(path):
    with open(path, newline="") as fh:
        return parse_csv(fh.read())
