"""Plot-ready output records and their CSV/JSON/text renderings.

Exact methods carry both a lossless ``num/den`` string and a decimal
rendering; every decimal in any format is 15 significant digits, rounded
half-even, so emitted files are stable golden data.  CSV is UTF-8 with a
header row and LF line endings; JSON is one object with a ``records`` array
and validates against the schema shipped in ``schemas/``.
"""

from __future__ import annotations

import csv
import decimal
import io
import json
from dataclasses import dataclass, fields
from fractions import Fraction
from importlib import resources
from typing import Literal, Optional

__all__ = [
    "Method",
    "OutputRecord",
    "render_decimal",
    "rational_str",
    "parse_rational",
    "CSV_COLUMNS",
    "records_to_csv",
    "records_to_json",
    "record_to_text",
    "load_output_schema",
]

Method = Literal[
    "exact", "binomial", "complement", "dp", "mc", "definetti", "normal", "chernoff"
]

_METHODS = ("exact", "binomial", "complement", "dp", "mc", "definetti", "normal", "chernoff")

_DECIMAL_DIGITS = 15


def render_decimal(x: Fraction | float | int) -> str:
    """Render to 15 significant digits, round-half-even."""
    with decimal.localcontext() as ctx:
        ctx.prec = _DECIMAL_DIGITS
        ctx.rounding = decimal.ROUND_HALF_EVEN
        if isinstance(x, Fraction):
            d = decimal.Decimal(x.numerator) / decimal.Decimal(x.denominator)
        else:
            d = +decimal.Decimal(x)
    return str(d)


def rational_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of ``rational_str``; round-trips bit-for-bit."""
    num, den = text.split("/")
    return Fraction(int(num), int(den))


@dataclass(frozen=True)
class OutputRecord:
    """One (b, w, method) result row; metadata fields apply where relevant."""

    b: int
    w: int
    method: Method
    value: str
    exact: Optional[str] = None
    target: Optional[int] = None
    horizon: Optional[int] = None
    samples: Optional[int] = None
    seed: Optional[int] = None
    stream_id: Optional[int] = None
    streams: Optional[int] = None
    std_err: Optional[str] = None
    ci_lo: Optional[str] = None
    ci_hi: Optional[str] = None
    reference: Optional[str] = None
    z_score: Optional[str] = None
    note: Optional[str] = None

    def __post_init__(self) -> None:
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.method in ("exact", "binomial", "complement", "dp") and not self.exact:
            raise ValueError(f"method {self.method!r} must carry the exact rational")

    def to_dict(self) -> dict[str, object]:
        """Field-ordered dict with None entries dropped."""
        out: dict[str, object] = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if v is not None:
                out[f.name] = v
        return out


CSV_COLUMNS = tuple(f.name for f in fields(OutputRecord))


def records_to_csv(records: list[OutputRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow(
            ["" if (v := getattr(rec, col)) is None else str(v) for col in CSV_COLUMNS]
        )
    return buf.getvalue()


def records_to_json(records: list[OutputRecord]) -> str:
    return json.dumps({"records": [rec.to_dict() for rec in records]}, indent=2) + "\n"


def record_to_text(record: OutputRecord) -> str:
    return " ".join(f"{k}={v}" for k, v in record.to_dict().items())


def load_output_schema() -> dict:
    """The published JSON schema for ``records_to_json`` output."""
    text = resources.files("polya_urn").joinpath("schemas/output_records.schema.json").read_text("utf-8")
    return json.loads(text)
