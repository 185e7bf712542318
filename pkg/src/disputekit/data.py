"""Dyad-year records, CSV ingest, class-balanced splitting, and input scaling."""

import csv
import io
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import DataFormatError
from .schema import VariableSchema

META_COLUMNS = ("state_a", "state_b", "year")
OUTCOME_COLUMN = "outcome"


@dataclass(frozen=True)
class DyadYearRecord:
    state_a: str
    state_b: str
    year: int
    values: tuple[float, ...]
    outcome: int


def validate_record(record: DyadYearRecord, schema: VariableSchema, context: str = "") -> None:
    where = f"{context}: " if context else ""
    if len(record.values) != len(schema):
        raise DataFormatError(f"{where}expected {len(schema)} values, got {len(record.values)}")
    if record.outcome not in (0, 1):
        raise DataFormatError(f"{where}outcome must be 0 or 1, got {record.outcome}")
    for spec, value in zip(schema, record.values):
        if not np.isfinite(value) or not spec.contains(value):
            raise DataFormatError(
                f"{where}{spec.name} value {value} outside domain "
                f"[{spec.domain_min}, {spec.domain_max}]"
            )


@dataclass(frozen=True)
class Dataset:
    schema: VariableSchema
    records: tuple[DyadYearRecord, ...]
    provenance: str = ""

    def __post_init__(self):
        for i, rec in enumerate(self.records):
            validate_record(rec, self.schema, context=f"record {i}")

    def __len__(self):
        return len(self.records)

    def values_matrix(self) -> np.ndarray:
        return np.array([r.values for r in self.records], dtype=float).reshape(
            len(self.records), len(self.schema)
        )

    def outcomes(self) -> np.ndarray:
        return np.array([r.outcome for r in self.records], dtype=int)

    def class_counts(self) -> tuple[int, int]:
        """(dispute count, non-dispute count)."""
        n_dispute = sum(r.outcome for r in self.records)
        return n_dispute, len(self.records) - n_dispute


def parse_dataset(text: str, schema: VariableSchema, provenance: str = "") -> Dataset:
    """Parse CSV content into a validated Dataset.

    Header must contain state_a, state_b, year, outcome plus every schema
    variable; column order is free. Data errors report the 1-based file line.
    """
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise DataFormatError("empty file: no header row") from None
    header = [h.strip() for h in header]
    positions = {}
    for name in META_COLUMNS + schema.names + (OUTCOME_COLUMN,):
        if name not in header:
            raise DataFormatError(f"missing column {name!r}")
        positions[name] = header.index(name)

    records = []
    for lineno, row in enumerate(reader, start=2):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue  # blank line
        if len(row) != len(header):
            raise DataFormatError(
                f"line {lineno}: malformed row, expected {len(header)} fields, got {len(row)}"
            )

        def field(name):
            return row[positions[name]].strip()

        try:
            year = int(field("year"))
            outcome = int(field(OUTCOME_COLUMN))
            values = tuple(float(field(name)) for name in schema.names)
        except ValueError as exc:
            raise DataFormatError(f"line {lineno}: malformed row ({exc})") from None
        record = DyadYearRecord(field("state_a"), field("state_b"), year, values, outcome)
        validate_record(record, schema, context=f"line {lineno}")
        records.append(record)

    if not records:
        raise DataFormatError("dataset contains no records")
    return Dataset(schema, tuple(records), provenance)


def serialize_dataset(dataset: Dataset) -> str:
    """Canonical CSV form; floats use repr so parse(serialize(d)) == d."""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(list(META_COLUMNS) + list(dataset.schema.names) + [OUTCOME_COLUMN])
    for r in dataset.records:
        writer.writerow(
            [r.state_a, r.state_b, r.year] + [repr(v) for v in r.values] + [r.outcome]
        )
    return out.getvalue()


def balanced_split(dataset: Dataset, n_per_class: int, seed: int) -> tuple[Dataset, Dataset]:
    """Draw n_per_class records of each outcome class (without replacement)
    into a balanced training set; everything else becomes the test set."""
    if n_per_class <= 0:
        raise ValueError("n_per_class must be positive")
    dispute_idx = [i for i, r in enumerate(dataset.records) if r.outcome == 1]
    peace_idx = [i for i, r in enumerate(dataset.records) if r.outcome == 0]
    for label, idx in (("dispute", dispute_idx), ("non-dispute", peace_idx)):
        if len(idx) < n_per_class:
            raise DataFormatError(
                f"insufficient {label} records: requested {n_per_class}, available {len(idx)}"
            )

    rng = np.random.default_rng(seed)
    chosen = set(rng.choice(dispute_idx, n_per_class, replace=False))
    chosen |= set(rng.choice(peace_idx, n_per_class, replace=False))
    train = tuple(r for i, r in enumerate(dataset.records) if i in chosen)
    test = tuple(r for i, r in enumerate(dataset.records) if i not in chosen)
    if not test:
        warnings.warn("balanced_split: test set is empty (all records used for training)")

    note = f"{dataset.provenance}; " if dataset.provenance else ""
    return (
        Dataset(dataset.schema, train, f"{note}balanced train split n={n_per_class} seed={seed}"),
        Dataset(dataset.schema, test, f"{note}test remainder of balanced split seed={seed}"),
    )


@dataclass(frozen=True)
class ScalingParams:
    """Per-variable (low, high) fitted on training data; maps raw units
    onto [0,1] with out-of-range values clamped."""

    low: tuple[float, ...]
    high: tuple[float, ...]

    def __post_init__(self):
        if len(self.low) != len(self.high):
            raise ValueError("low/high length mismatch")
        if any(h <= l for l, h in zip(self.low, self.high)):
            raise ValueError("scaling requires high > low for every variable")

    def scale(self, raw: np.ndarray) -> np.ndarray:
        lo = np.asarray(self.low)
        hi = np.asarray(self.high)
        return np.clip((np.asarray(raw, dtype=float) - lo) / (hi - lo), 0.0, 1.0)

    def scale_value(self, i: int, raw: float) -> float:
        span = self.high[i] - self.low[i]
        return float(min(1.0, max(0.0, (raw - self.low[i]) / span)))

    def unscale_value(self, i: int, scaled: float) -> float:
        return self.low[i] + scaled * (self.high[i] - self.low[i])


def fit_scaling(train: Dataset) -> ScalingParams:
    if len(train) == 0:
        raise ValueError("cannot fit scaling on an empty dataset")
    X = train.values_matrix()
    low = X.min(axis=0)
    high = X.max(axis=0)
    # degenerate (constant) variables get a unit span so scaling stays defined
    high = np.where(high == low, low + 1.0, high)
    return ScalingParams(tuple(float(v) for v in low), tuple(float(v) for v in high))


def apply_scaling(params: ScalingParams, record: DyadYearRecord) -> np.ndarray:
    return params.scale(np.asarray(record.values))


def scaled_arrays(params: ScalingParams, dataset: Dataset) -> tuple[np.ndarray, np.ndarray]:
    """(X, y) with X scaled to [0,1] — the shape every trainer consumes."""
    return params.scale(dataset.values_matrix()), dataset.outcomes().astype(float)


def with_outcome(record: DyadYearRecord, outcome: int) -> DyadYearRecord:
    return replace(record, outcome=outcome)
