"""CSV ingestion of daily price and event files, and return computation.

Expected format: RFC-4180 CSV, UTF-8, first row a header.  Dates are
ISO-8601 (YYYY-MM-DD) in a column literally named "Date"; prices use a
decimal point and no thousands separators.  Rows with blank or malformed
price cells are rejected, never interpolated.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (DuplicateDate, InputError, InvalidDate, MissingColumn,
                     NonNumericPrice, NonPositivePrice, TooShort)

RETURN_LOG = "log"
RETURN_SIMPLE = "simple"


@dataclass(frozen=True)
class PriceSeries:
    """Dated positive prices, strictly increasing in date."""

    dates: tuple[dt.date, ...]
    prices: np.ndarray

    def __post_init__(self):
        prices = np.ascontiguousarray(self.prices, dtype=np.float64)
        if len(self.dates) != prices.shape[0]:
            raise ValueError("dates and prices must have equal length")
        if prices.shape[0] < 2:
            raise TooShort("price series needs at least 2 rows")
        if not np.all(prices > 0):
            raise NonPositivePrice("all prices must be > 0")
        if any(b <= a for a, b in zip(self.dates, self.dates[1:])):
            raise DuplicateDate("dates must be strictly increasing")
        prices.setflags(write=False)
        object.__setattr__(self, "prices", prices)

    def __len__(self) -> int:
        return int(self.prices.shape[0])


@dataclass(frozen=True)
class ReturnSeries:
    """Day-over-day returns; each value is dated by the later day it describes."""

    values: np.ndarray
    kind: str
    dates: tuple[dt.date, ...] | None = None

    def __post_init__(self):
        if self.kind not in (RETURN_LOG, RETURN_SIMPLE):
            raise ValueError(f"kind must be 'log' or 'simple', got {self.kind!r}")
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if self.dates is not None and len(self.dates) != values.shape[0]:
            raise ValueError("dates and values must have equal length")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class EventList:
    """Dated event labels for report overlays."""

    entries: tuple[tuple[dt.date, str], ...]

    def __post_init__(self):
        if any(not label for _, label in self.entries):
            raise InputError("event labels must be non-empty")

    def __len__(self) -> int:
        return len(self.entries)


def _text_lines(source):
    """Decode a path, bytes or file-like object into text lines."""
    if isinstance(source, (str, Path)):
        return io.StringIO(Path(source).read_text(encoding="utf-8-sig"))
    if isinstance(source, (bytes, bytearray)):
        return io.StringIO(source.decode("utf-8-sig"))
    data = source.read()
    if isinstance(data, bytes):
        data = data.decode("utf-8-sig")
    elif data.startswith("﻿"):
        data = data.lstrip("﻿")
    return io.StringIO(data)


def _parse_date(cell: str, line: int) -> dt.date:
    try:
        return dt.date.fromisoformat(cell.strip())
    except ValueError:
        raise InvalidDate(f"line {line}: invalid ISO date {cell!r}") from None


def parse_price_csv(source, column: str = "Adj Close") -> PriceSeries:
    """Parse a header-bearing price CSV into a date-sorted PriceSeries.

    `column` names the price column; the date column must be named "Date".
    Raises MissingColumn, InvalidDate, NonNumericPrice, NonPositivePrice,
    DuplicateDate or TooShort with the offending line number.
    """
    reader = csv.reader(_text_lines(source))
    try:
        header = next(reader)
    except StopIteration:
        raise TooShort("empty file: expected a header row") from None
    header = [h.strip() for h in header]
    if "Date" not in header:
        raise MissingColumn('no "Date" column in header')
    if column not in header:
        raise MissingColumn(f"no {column!r} column in header")
    date_idx = header.index("Date")
    price_idx = header.index(column)

    rows: list[tuple[dt.date, float, int]] = []
    for line, cells in enumerate(reader, start=2):
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) <= max(date_idx, price_idx):
            raise NonNumericPrice(f"line {line}: row has too few columns")
        day = _parse_date(cells[date_idx], line)
        raw = cells[price_idx].strip()
        try:
            price = float(raw)
        except ValueError:
            raise NonNumericPrice(f"line {line}: non-numeric price {raw!r}") from None
        if not math.isfinite(price):
            raise NonNumericPrice(f"line {line}: non-finite price {raw!r}")
        if price <= 0:
            raise NonPositivePrice(f"line {line}: non-positive price {raw!r}")
        rows.append((day, price, line))

    if len(rows) < 2:
        raise TooShort(f"need at least 2 data rows, got {len(rows)}")
    rows.sort(key=lambda r: r[0])
    for (d1, _, _), (d2, _, line) in zip(rows, rows[1:]):
        if d1 == d2:
            raise DuplicateDate(f"line {line}: duplicate date {d2.isoformat()}")
    return PriceSeries(tuple(r[0] for r in rows),
                       np.asarray([r[1] for r in rows], dtype=np.float64))


def parse_events_csv(source) -> EventList:
    """Parse an events CSV with a "Date" column and a label column.

    The label column is the one named "Label" when present, otherwise the
    first non-date column.  An empty body yields an empty EventList.
    """
    reader = csv.reader(_text_lines(source))
    try:
        header = next(reader)
    except StopIteration:
        return EventList(())
    header = [h.strip() for h in header]
    if "Date" not in header:
        raise MissingColumn('no "Date" column in events header')
    date_idx = header.index("Date")
    if "Label" in header:
        label_idx = header.index("Label")
    else:
        others = [i for i in range(len(header)) if i != date_idx]
        if not others:
            raise MissingColumn("no label column in events header")
        label_idx = others[0]

    entries = []
    for line, cells in enumerate(reader, start=2):
        if not cells or all(not c.strip() for c in cells):
            continue
        if len(cells) <= max(date_idx, label_idx):
            raise InputError(f"line {line}: row has too few columns")
        day = _parse_date(cells[date_idx], line)
        label = cells[label_idx].strip()
        if not label:
            raise InputError(f"line {line}: empty event label")
        entries.append((day, label))
    return EventList(tuple(entries))


def compute_returns(series: PriceSeries, kind: str = RETURN_LOG) -> ReturnSeries:
    """Day-over-day returns of a price series.

    log: ln(z[i+1] / z[i]); simple: z[i+1] / z[i] - 1.  The i-th return is
    dated by the later day of the pair, so a letter's date is the trading
    day it describes.
    """
    z = series.prices
    if kind == RETURN_LOG:
        values = np.log(z[1:] / z[:-1])
    elif kind == RETURN_SIMPLE:
        values = z[1:] / z[:-1] - 1.0
    else:
        raise ValueError(f"kind must be 'log' or 'simple', got {kind!r}")
    return ReturnSeries(values, kind, series.dates[1:])
