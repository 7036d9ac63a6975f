# export/export_sink.py
# Table sink: deterministic CSV (with '#' header block) or JSON (metadata + column arrays).

from __future__ import annotations

import csv
import io
import json
import math
import os
import threading
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Sequence

import numpy as np

from utils import __version__
from utils.logger import get_logger

logger = get_logger(__name__)

FORMATS = ("csv", "json")


# ====== TYPES ======
@dataclass
class Table:
    """Named columns of equal length plus a metadata block.

    Complex quantities are stored as separate real columns (re_*, im_*).
    Metadata holds parameters and tolerances only; no timestamps, so equal
    inputs give byte-identical files.
    """
    name: str
    columns: Dict[str, Sequence[float]]
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cols: Dict[str, np.ndarray] = {}
        for k, v in self.columns.items():
            arr = np.asarray(v).ravel()
            # text columns (check names, statuses) stay as str
            cols[k] = arr.astype(float) if arr.dtype.kind in "biuf" or arr.size == 0 else arr.astype(str)
        lengths = {v.size for v in cols.values()}
        if len(lengths) > 1:
            raise ValueError(f"table '{self.name}' has columns of different lengths: {sorted(lengths)}")
        self.columns = cols

    @property
    def n_rows(self) -> int:
        return next(iter(self.columns.values())).size if self.columns else 0


# ====== FORMATTING ======
def _fmt(v: float, digits: int) -> str:
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return f"{v:.{digits}g}"


def _meta_value(v: Any) -> str:
    if isinstance(v, float):
        return _fmt(v, 17)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_meta_value(x) for x in v) + "]"
    return str(v)


def _json_safe(v: Any) -> Any:
    if isinstance(v, (np.floating, float)):
        f = float(v)
        return f if math.isfinite(f) else repr(f)
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, dict):
        return {str(k): _json_safe(x) for k, x in v.items()}
    if isinstance(v, (list, tuple, np.ndarray)):
        return [_json_safe(x) for x in v]
    return v


def _cell(v: Any, digits: int) -> str:
    if isinstance(v, (str, np.str_)):
        return str(v)
    return _fmt(float(v), digits)


def render_csv(table: Table, sig_digits: int = 17) -> str:
    buf = io.StringIO()
    buf.write(f"# rmscat {__version__}\n# table: {table.name}\n")
    for k, v in table.meta.items():
        buf.write(f"# {k} = {_meta_value(v)}\n")
    names = list(table.columns)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(names)
    cols = [table.columns[n] for n in names]
    for i in range(table.n_rows):
        writer.writerow([_cell(c[i], sig_digits) for c in cols])
    return buf.getvalue()


def render_json(table: Table) -> str:
    doc = {
        "metadata": _json_safe({"version": __version__, "table": table.name, **table.meta}),
        "columns": {n: _json_safe(c.tolist()) for n, c in table.columns.items()},
    }
    return json.dumps(doc, indent=1) + "\n"


# ====== SINK ======
class TableSink:
    """Write tables under one output directory; writes are serialized by a lock."""

    def __init__(self, out_dir: str = "data", fmt: str = "csv", sig_digits: int = 17) -> None:
        fmt = str(fmt).lower()
        if fmt not in FORMATS:
            raise ValueError(f"unknown output format '{fmt}' (expected one of {', '.join(FORMATS)})")
        self._out_dir = out_dir
        self._fmt = fmt
        self._digits = int(sig_digits)
        self._lock = threading.Lock()

    @property
    def fmt(self) -> str:
        return self._fmt

    def path_for(self, stem: str) -> str:
        return os.path.join(self._out_dir, f"{stem}.{self._fmt}")

    def write(self, table: Table, path: Optional[str] = None) -> str:
        """Render and write one table; returns the file path."""
        path = path or self.path_for(table.name)
        text = render_csv(table, self._digits) if self._fmt == "csv" else render_json(table)
        with self._lock:
            parent = os.path.dirname(path)
            if parent:
                os.makedirs(parent, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        logger.info("Export: wrote %s (%d rows, %s)", path, table.n_rows, self._fmt)
        return path
