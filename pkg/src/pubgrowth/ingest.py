"""Publication-record export parsing and standard series construction.

Input is a header-bearing CSV (UTF-8, RFC 4180) with columns
``id,date,source,open_access,dataset``.  Malformed rows are never dropped
silently: every reject is counted per reason in a :class:`RejectReport`.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
from collections import Counter
from dataclasses import dataclass, field

from .errors import EmptyInput, EmptySelection, SchemaError
from .series import DailySeries, from_events

REQUIRED_COLUMNS = ("id", "date", "source", "open_access", "dataset")
DATASETS = ("dimensions", "who")

# Provider labels are heterogeneous across the two exports; normalize
# case-insensitively through this alias table.
SOURCE_ALIASES = {
    "pubmed": "pubmed",
    "pub med": "pubmed",
    "medline": "pubmed",
    "pmc": "pmc",
    "pubmed central": "pmc",
    "medrxiv": "medrxiv",
    "med rxiv": "medrxiv",
    "ssrn": "ssrn",
}


def normalize_source(raw: str) -> str:
    token = " ".join(raw.strip().lower().split())
    return SOURCE_ALIASES.get(token, token)


@dataclass(frozen=True)
class PublicationRecord:
    id: str
    date_indexed: dt.date
    source: str
    open_access: bool | None
    dataset: str


@dataclass(frozen=True)
class SeriesSpec:
    """Declarative filter producing one daily series from a record set."""

    name: str
    dataset: str
    source_filter: str | None = None
    oa_filter: bool | None = None

    def matches(self, record: PublicationRecord) -> bool:
        if record.dataset != self.dataset:
            return False
        if self.source_filter is not None and record.source != self.source_filter:
            return False
        if self.oa_filter is not None and record.open_access != self.oa_filter:
            return False
        return True


# The eight standard series.  TS1a is the only WHO-based one; the access and
# source splits are Dimensions-only (the WHO export carries no OA field).
STANDARD_SPECS = (
    SeriesSpec("ts1a", "who"),
    SeriesSpec("ts1b", "dimensions"),
    SeriesSpec("ts2a", "dimensions", oa_filter=True),
    SeriesSpec("ts2b", "dimensions", oa_filter=False),
    SeriesSpec("ts3a", "dimensions", source_filter="pubmed"),
    SeriesSpec("ts3b", "dimensions", source_filter="pmc"),
    SeriesSpec("ts3c", "dimensions", source_filter="medrxiv"),
    SeriesSpec("ts3d", "dimensions", source_filter="ssrn"),
)


@dataclass
class RejectReport:
    accepted: int = 0
    rejected: Counter = field(default_factory=Counter)
    duplicate_ids: int = 0

    @property
    def total_rejected(self) -> int:
        return sum(self.rejected.values())

    def to_json_dict(self) -> dict:
        return {"accepted": self.accepted, "rejected": dict(sorted(self.rejected.items()))}


def _parse_bool(raw: str) -> bool | None:
    token = raw.strip().lower()
    if token == "":
        return None
    if token == "true":
        return True
    if token == "false":
        return False
    raise ValueError(token)


def parse_records(stream, dataset: str | None = None):
    """Parse a record export into ``(records, reject_report)``.

    ``stream`` is a text or binary file object; ``dataset``, when given,
    keeps only rows of that dataset.  Raises :class:`SchemaError` when a
    required header column is missing and :class:`EmptyInput` on an empty
    file.
    """
    if isinstance(stream, (bytes, bytearray)):
        stream = io.BytesIO(stream)
    if hasattr(stream, "read") and isinstance(stream.read(0), bytes):
        stream = io.TextIOWrapper(stream, encoding="utf-8", newline="")
    reader = csv.DictReader(stream)
    if reader.fieldnames is None:
        raise EmptyInput("the record export is empty")
    for column in REQUIRED_COLUMNS:
        if column not in reader.fieldnames:
            raise SchemaError(f"missing required column: {column}")

    records = []
    report = RejectReport()
    seen_ids: set[tuple[str, str]] = set()
    for row in reader:
        rec_id = (row["id"] or "").strip()
        if not rec_id:
            report.rejected["missing_id"] += 1
            continue
        try:
            date_indexed = dt.date.fromisoformat((row["date"] or "").strip())
        except ValueError:
            report.rejected["bad_date"] += 1
            continue
        ds = (row["dataset"] or "").strip().lower()
        if ds not in DATASETS:
            report.rejected["bad_dataset"] += 1
            continue
        try:
            open_access = _parse_bool(row["open_access"] or "")
        except ValueError:
            report.rejected["bad_open_access"] += 1
            continue
        if dataset is not None and ds != dataset:
            report.rejected["other_dataset"] += 1
            continue
        key = (ds, rec_id)
        if key in seen_ids:
            # duplicates count as records (each indexing event counts once)
            # but are surfaced for inspection
            report.duplicate_ids += 1
        seen_ids.add(key)
        records.append(
            PublicationRecord(rec_id, date_indexed, normalize_source(row["source"] or ""), open_access, ds)
        )
        report.accepted += 1
    if not records and report.total_rejected == 0:
        raise EmptyInput("the record export has a header but no rows")
    return records, report


def serialize_records(records, stream) -> None:
    """Write records back out in the input CSV schema (round-trip exact)."""
    writer = csv.writer(stream)
    writer.writerow(REQUIRED_COLUMNS)
    for r in records:
        oa = "" if r.open_access is None else ("true" if r.open_access else "false")
        writer.writerow([r.id, r.date_indexed.isoformat(), r.source, oa, r.dataset])


def build_series(records, spec: SeriesSpec, date_range=None) -> DailySeries:
    dates = [r.date_indexed for r in records if spec.matches(r)]
    if not dates:
        raise EmptySelection(f"no records match series spec {spec.name!r}")
    series, _ = from_events(dates, date_range)
    return series


def build_standard_suite(records, date_range=None):
    """Build every constructible standard series.

    Returns ``(series_by_name, skipped)`` where ``skipped`` maps a series
    name to the reason it could not be built.
    """
    built: dict[str, DailySeries] = {}
    skipped: dict[str, str] = {}
    for spec in STANDARD_SPECS:
        try:
            built[spec.name] = build_series(records, spec, date_range)
        except EmptySelection as exc:
            skipped[spec.name] = str(exc)
    return built, skipped
