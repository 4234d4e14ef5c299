"""Event-log ingestion, sequence construction, and dataset statistics."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, NamedTuple

from .errors import ConfigError, IngestError


@dataclass(frozen=True)
class Event:
    """One typed event; timestamp and extra attributes are optional."""

    event_type: str
    timestamp: float | None = None
    attributes: dict[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if not self.event_type:
            raise ValueError("event_type must be non-empty")


@dataclass(frozen=True)
class Sequence:
    """An ordered, non-empty list of events belonging to one entity."""

    id: str
    events: tuple[Event, ...]

    def __post_init__(self) -> None:
        if len(self.events) < 1:
            raise ValueError(f"sequence {self.id!r} must contain at least one event")
        stamps = [e.timestamp for e in self.events]
        if all(t is not None for t in stamps):
            for a, b in zip(stamps, stamps[1:]):
                if b < a:
                    raise ValueError(f"sequence {self.id!r} has decreasing timestamps")

    def event_types(self) -> tuple[str, ...]:
        return tuple(e.event_type for e in self.events)

    def __len__(self) -> int:
        return len(self.events)


@dataclass(frozen=True)
class Dataset:
    sequences: tuple[Sequence, ...]
    alphabet: frozenset[str]

    def __post_init__(self) -> None:
        ids = [s.id for s in self.sequences]
        if len(set(ids)) != len(ids):
            raise ValueError("sequence ids must be unique")
        for s in self.sequences:
            for e in s.events:
                if e.event_type not in self.alphabet:
                    raise ValueError(
                        f"event type {e.event_type!r} of sequence {s.id!r} missing from alphabet"
                    )

    @classmethod
    def from_sequences(cls, sequences: Iterable[Sequence]) -> "Dataset":
        """Build a dataset with the alphabet derived from the data."""
        seqs = tuple(sequences)
        alphabet = frozenset(e.event_type for s in seqs for e in s.events)
        return cls(sequences=seqs, alphabet=alphabet)

    def sequence_map(self) -> dict[str, Sequence]:
        return {s.id: s for s in self.sequences}

    def __len__(self) -> int:
        return len(self.sequences)


@dataclass(frozen=True)
class IngestConfig:
    """How to turn delimiter-separated rows into sequences.

    With ``has_header=False`` columns are addressed by 0-based index
    (as a string or int) instead of a header name.
    """

    group_by_column: str
    event_type_column: str
    timestamp_column: str | None = None
    delimiter: str = ","
    has_header: bool = True

    def __post_init__(self) -> None:
        if str(self.group_by_column) == str(self.event_type_column):
            raise ValueError("group_by_column and event_type_column must differ")
        if len(self.delimiter) != 1:
            raise ValueError("delimiter must be a single character")

    @classmethod
    def from_json_dict(cls, d: dict) -> "IngestConfig":
        try:
            return cls(
                group_by_column=str(d["groupByColumn"]),
                event_type_column=str(d["eventTypeColumn"]),
                timestamp_column=(
                    str(d["timestampColumn"]) if d.get("timestampColumn") is not None else None
                ),
                delimiter=d.get("delimiter", ","),
                has_header=bool(d.get("hasHeader", True)),
            )
        except KeyError as exc:
            raise ConfigError(f"ingest config missing key {exc.args[0]!r}") from None

    def to_json_dict(self) -> dict:
        return {
            "groupByColumn": self.group_by_column,
            "eventTypeColumn": self.event_type_column,
            "timestampColumn": self.timestamp_column,
            "delimiter": self.delimiter,
            "hasHeader": self.has_header,
        }


class DatasetStats(NamedTuple):
    count: int
    avg_length: float


def _as_text(raw: bytes | str | IO[bytes] | IO[str]) -> IO[str]:
    if isinstance(raw, bytes):
        return io.StringIO(raw.decode("utf-8"))
    if isinstance(raw, str):
        return io.StringIO(raw)
    data = raw.read()
    if isinstance(data, bytes):
        return io.StringIO(data.decode("utf-8"))
    return io.StringIO(data)


def _resolve_column(name: str, header: list[str] | None, width: int, role: str) -> int:
    if header is not None:
        try:
            return header.index(name)
        except ValueError:
            raise ConfigError(f"{role} column {name!r} not found in header {header}") from None
    try:
        idx = int(name)
    except (TypeError, ValueError):
        raise ConfigError(
            f"{role} column {name!r} must be a 0-based index when the input has no header"
        ) from None
    if not 0 <= idx < width:
        raise ConfigError(f"{role} column index {idx} out of range for {width}-column input")
    return idx


def ingest(raw: bytes | str | IO[bytes] | IO[str], config: IngestConfig) -> Dataset:
    """Parse delimiter-separated rows and group them into sequences.

    Rows sharing the group column value form one sequence, ordered by
    timestamp when every row of the group carries one (stable for ties),
    otherwise by input order. Empty input yields an empty dataset.
    """
    reader = csv.reader(_as_text(raw), delimiter=config.delimiter)
    rows: list[list[str]] = []
    header: list[str] | None = None
    for row in reader:
        if not row:
            continue  # blank line
        if config.has_header and header is None:
            header = row
            continue
        rows.append(row)

    if not rows:
        return Dataset.from_sequences(())

    width = len(header) if header is not None else len(rows[0])
    group_idx = _resolve_column(config.group_by_column, header, width, "group-by")
    type_idx = _resolve_column(config.event_type_column, header, width, "event-type")
    ts_idx = (
        _resolve_column(config.timestamp_column, header, width, "timestamp")
        if config.timestamp_column is not None
        else None
    )

    attr_names = {
        i: (header[i] if header is not None else str(i))
        for i in range(width)
        if i not in (group_idx, type_idx, ts_idx)
    }

    groups: dict[str, list[tuple[float | None, Event]]] = {}
    for row_no, row in enumerate(rows, start=1):
        if len(row) != width:
            raise IngestError(f"row {row_no}: expected {width} columns, got {len(row)}")
        event_type = row[type_idx]
        if not event_type:
            raise IngestError(f"row {row_no}: empty event type")
        timestamp: float | None = None
        if ts_idx is not None and row[ts_idx] != "":
            try:
                timestamp = float(row[ts_idx])
            except ValueError:
                raise IngestError(
                    f"row {row_no}: bad timestamp {row[ts_idx]!r}"
                ) from None
        attributes = {attr_names[i]: row[i] for i in attr_names}
        event = Event(event_type=event_type, timestamp=timestamp, attributes=attributes)
        groups.setdefault(row[group_idx], []).append((timestamp, event))

    sequences = []
    for group_id, entries in groups.items():
        if all(ts is not None for ts, _ in entries):
            entries = sorted(entries, key=lambda pair: pair[0])  # stable: ties keep input order
        sequences.append(Sequence(id=group_id, events=tuple(ev for _, ev in entries)))
    return Dataset.from_sequences(sequences)


def filter_by_length(d: Dataset, min_len: int = 3, max_len: int | None = None) -> Dataset:
    """Keep exactly the sequences with min_len <= length <= max_len."""
    if min_len < 1:
        raise ValueError("min_len must be >= 1")
    if max_len is not None and max_len < min_len:
        raise ValueError(f"max_len ({max_len}) must be >= min_len ({min_len})")
    kept = tuple(
        s for s in d.sequences if len(s) >= min_len and (max_len is None or len(s) <= max_len)
    )
    return Dataset.from_sequences(kept)


def stats(d: Dataset) -> DatasetStats:
    """Sequence count and average sequence length (0 for an empty dataset)."""
    if not d.sequences:
        return DatasetStats(0, 0.0)
    total = sum(len(s) for s in d.sequences)
    return DatasetStats(len(d.sequences), total / len(d.sequences))


@dataclass(frozen=True)
class DatasetManifest:
    """A loadable dataset: display name, CSV location, and ingest settings."""

    name: str
    csv_path: str
    ingest_config: IngestConfig
    base_dir: Path

    def resolved_csv_path(self) -> Path:
        p = Path(self.csv_path)
        return p if p.is_absolute() else self.base_dir / p


def load_manifest(path: Path | str) -> DatasetManifest:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"manifest {path}: invalid JSON ({exc})") from None
    for key in ("name", "csvPath", "ingestConfig"):
        if key not in doc:
            raise ConfigError(f"manifest {path}: missing key {key!r}")
    return DatasetManifest(
        name=str(doc["name"]),
        csv_path=str(doc["csvPath"]),
        ingest_config=IngestConfig.from_json_dict(doc["ingestConfig"]),
        base_dir=path.parent,
    )


def load_manifest_dir(directory: Path | str) -> dict[str, DatasetManifest]:
    """All dataset manifests (``*.json``) in a directory, keyed by name."""
    directory = Path(directory)
    manifests: dict[str, DatasetManifest] = {}
    for path in sorted(directory.glob("*.json")):
        manifest = load_manifest(path)
        if manifest.name in manifests:
            raise ConfigError(f"duplicate dataset name {manifest.name!r} in {directory}")
        manifests[manifest.name] = manifest
    return manifests


def load_dataset(manifest: DatasetManifest) -> Dataset:
    csv_path = manifest.resolved_csv_path()
    if not csv_path.exists():
        raise ConfigError(f"dataset file {csv_path} does not exist")
    with open(csv_path, "rb") as fh:
        return ingest(fh, manifest.ingest_config)
