"""Report envelope and its JSON / CSV / pretty renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

OK, CHECK_FAILED, ERROR = "ok", "check_failed", "error"

# Column order of every CSV rendering, keyed by command.
CSV_COLUMNS = {
    "identities": ["structure", "identity", "residual", "pass"],
    "spectrum": ["value", "rational", "multiplicity"],
    "bounds": ["label", "lo", "hi"],
    "betti": ["kind", "id", "betti", "quantity", "relation", "threshold", "observed", "holds", "verdict"],
    "verify-all": ["id", "title", "status"],
}


def rational_guess(x: float, max_den: int = 100, tol: float = 1e-9) -> str | None:
    """Closest fraction with denominator at most ``max_den``, if within ``tol``."""
    f = Fraction(x).limit_denominator(max_den)
    return str(f) if abs(float(f) - x) < tol else None


def round_sig(x: float, digits: int = 12) -> float:
    return float(f"{x:.{digits}g}")


def eigen_entry(value: float, multiplicity: int) -> dict:
    return {"value": round_sig(value), "rational": rational_guess(value), "multiplicity": int(multiplicity)}


def jsonable(obj: Any) -> Any:
    """Convert numpy scalars/arrays and tuples into plain JSON types."""
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


@dataclass
class ReportEnvelope:
    command: str
    inputs: dict
    results: dict
    tolerances: dict = field(default_factory=dict)
    status: str = OK
    rows: list[dict] = field(default_factory=list)  # flat rows for CSV

    def to_dict(self) -> dict:
        return jsonable(
            {
                "command": self.command,
                "inputs": self.inputs,
                "results": self.results,
                "tolerances": self.tolerances,
                "status": self.status,
            }
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = CSV_COLUMNS[self.command]
        writer = csv.DictWriter(buf, fieldnames=cols, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for row in self.rows:
            writer.writerow({k: _csv_cell(row.get(k)) for k in cols})
        return buf.getvalue()


def _csv_cell(v: Any) -> Any:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return v


def format_value(x: float) -> str:
    """Rational form when one is close, otherwise 12 significant digits."""
    r = rational_guess(x)
    return r if r is not None else f"{x:.12g}"
