"""Immutable tabular dataset with typed columns.

Loading rules:

* cells equal to ``""`` or ``"NA"`` are missing; every other cell is kept
  as the exact raw string it was parsed from, so serializing a dataset
  writes the same cells back out.
* a column is Numerical iff every non-missing cell parses as a finite real
  number and the column has more than ``CATEGORICAL_CUTOFF`` distinct raw
  values; otherwise it is categorical (binary when exactly two distinct
  values are observed).  Callers can override the inferred type per column
  at load time, which matters for numeric-looking codes such as decile
  scores that land on the wrong side of the cutoff.
* numerical columns get 20 equal-width histogram bins spanning the full
  dataset min..max, fixed at load so that every subset is binned on the
  same grid.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum
from typing import IO, Iterable, Sequence

import numpy as np

from .errors import (
    AllMissing,
    EmptyDataset,
    InvalidOverride,
    InvalidSubset,
    MalformedCsv,
    UnknownColumn,
)

MISSING_TOKENS = frozenset({"", "NA"})
CATEGORICAL_CUTOFF = 10
NUM_BINS = 20


class ColumnKind(str, Enum):
    NUMERICAL = "numerical"
    CATEGORICAL_BINARY = "categorical_binary"
    CATEGORICAL_MULTI = "categorical_multi"

    @property
    def is_categorical(self) -> bool:
        return self is not ColumnKind.NUMERICAL


def parse_number(cell: str) -> float | None:
    """Finite float value of a cell, or None if it does not parse as one."""
    try:
        value = float(cell)
    except ValueError:
        return None
    return value if np.isfinite(value) else None


def infer_column_type(values: Iterable[str]) -> ColumnKind:
    """Infer a column's type from its raw cell values.

    Pure function of the multiset of values: order does not matter.
    Raises AllMissing when no non-missing cell exists.
    """
    distinct: set[str] = set()
    all_numeric = True
    seen = False
    for cell in values:
        if cell in MISSING_TOKENS:
            continue
        seen = True
        distinct.add(cell)
        if all_numeric and parse_number(cell) is None:
            all_numeric = False
    if not seen:
        raise AllMissing("column has no non-missing values")
    if all_numeric and len(distinct) > CATEGORICAL_CUTOFF:
        return ColumnKind.NUMERICAL
    if len(distinct) == 2:
        return ColumnKind.CATEGORICAL_BINARY
    return ColumnKind.CATEGORICAL_MULTI


@dataclass(frozen=True)
class Column:
    """One typed column.  ``cells`` holds the raw strings exactly as parsed;
    ``missing`` marks cells equal to a missing token.  Numerical columns
    carry float values (NaN at missing cells) and fixed bin edges;
    categorical columns carry the category list in first-appearance order
    and integer codes (-1 at missing cells)."""

    name: str
    kind: ColumnKind
    cells: tuple[str, ...]
    missing: np.ndarray
    numbers: np.ndarray | None
    bin_edges: tuple[float, ...] | None
    categories: tuple[str, ...]
    codes: np.ndarray | None

    def __len__(self) -> int:
        return len(self.cells)


def _build_column(name: str, raw: Sequence[str], kind: ColumnKind) -> Column:
    missing = np.array([cell in MISSING_TOKENS for cell in raw], dtype=bool)
    if not kind.is_categorical:
        numbers = np.full(len(raw), np.nan)
        for i, cell in enumerate(raw):
            if not missing[i]:
                value = parse_number(cell)
                if value is None:
                    raise InvalidOverride(
                        f"column {name!r} cannot be numerical: cell {cell!r} is not a finite number"
                    )
                numbers[i] = value
        finite = numbers[~np.isnan(numbers)]
        lo, hi = float(finite.min()), float(finite.max())
        if hi > lo:
            edges = tuple(float(e) for e in np.linspace(lo, hi, NUM_BINS + 1))
        else:
            # Constant column: a single unit-width bin centered on the value.
            edges = (lo - 0.5, lo + 0.5)
        return Column(name, kind, tuple(raw), missing, numbers, edges, (), None)

    categories: list[str] = []
    index: dict[str, int] = {}
    codes = np.full(len(raw), -1, dtype=np.int64)
    for i, cell in enumerate(raw):
        if missing[i]:
            continue
        code = index.get(cell)
        if code is None:
            code = len(categories)
            index[cell] = code
            categories.append(cell)
        codes[i] = code
    return Column(name, kind, tuple(raw), missing, None, None, tuple(categories), codes)


class Dataset:
    """Immutable collection of equal-length columns."""

    def __init__(self, name: str, columns: Sequence[Column]):
        self._name = name
        self._columns = tuple(columns)
        self._by_name = {c.name: c for c in self._columns}
        self._n_rows = len(self._columns[0]) if self._columns else 0

    @property
    def name(self) -> str:
        return self._name

    @property
    def columns(self) -> tuple[Column, ...]:
        return self._columns

    @property
    def column_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self._columns)

    @property
    def n_rows(self) -> int:
        return self._n_rows

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def column(self, name: str) -> Column:
        try:
            return self._by_name[name]
        except KeyError:
            raise UnknownColumn(f"no column named {name!r}") from None


def load_csv(
    data: bytes | str | IO[bytes],
    name: str = "dataset",
    numeric: Iterable[str] = (),
    categorical: Iterable[str] = (),
) -> Dataset:
    """Parse CSV bytes into a Dataset.

    ``numeric`` and ``categorical`` force the type of the named columns
    instead of inferring it.  Structural problems (ragged rows, duplicate
    or empty header names, blank lines) raise MalformedCsv; a file with a
    header but no data rows raises EmptyDataset.
    """
    if hasattr(data, "read"):
        data = data.read()
    if isinstance(data, bytes):
        try:
            text = data.decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise MalformedCsv(f"not valid UTF-8: {exc}") from None
    else:
        text = data

    try:
        rows = list(csv.reader(io.StringIO(text)))
    except csv.Error as exc:
        raise MalformedCsv(str(exc)) from None
    if not rows:
        raise MalformedCsv("no header row")
    header = rows[0]
    if not header or any(h == "" for h in header):
        raise MalformedCsv("header has an empty column name")
    if len(set(header)) != len(header):
        dupes = sorted({h for h in header if header.count(h) > 1})
        raise MalformedCsv(f"duplicate column names: {', '.join(dupes)}")
    body = rows[1:]
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise MalformedCsv(
                f"row {lineno} has {len(row)} cells, expected {len(header)}"
            )
    if not body:
        raise EmptyDataset("no data rows")

    numeric = set(numeric)
    categorical = set(categorical)
    for col in sorted((numeric | categorical) - set(header)):
        raise UnknownColumn(f"type override references unknown column {col!r}")
    overlap = numeric & categorical
    if overlap:
        raise InvalidOverride(
            f"columns forced both numeric and categorical: {', '.join(sorted(overlap))}"
        )

    columns = []
    for j, colname in enumerate(header):
        raw = [row[j] for row in body]
        if colname in numeric:
            kind = ColumnKind.NUMERICAL
            if all(cell in MISSING_TOKENS for cell in raw):
                raise AllMissing(f"column {colname!r} has no non-missing values")
        elif colname in categorical:
            distinct = {cell for cell in raw if cell not in MISSING_TOKENS}
            if not distinct:
                raise AllMissing(f"column {colname!r} has no non-missing values")
            kind = (
                ColumnKind.CATEGORICAL_BINARY
                if len(distinct) == 2
                else ColumnKind.CATEGORICAL_MULTI
            )
        else:
            try:
                kind = infer_column_type(raw)
            except AllMissing:
                raise AllMissing(f"column {colname!r} has no non-missing values") from None
        columns.append(_build_column(colname, raw, kind))
    return Dataset(name, columns)


def to_csv_bytes(ds: Dataset) -> bytes:
    """Serialize back to CSV.  Cells are written exactly as stored, so a
    load/serialize round trip is byte-identical for input that uses
    minimal quoting (the only kind the writer emits)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ds.column_names)
    cols = [c.cells for c in ds.columns]
    for i in range(ds.n_rows):
        writer.writerow([cells[i] for cells in cols])
    return buf.getvalue().encode("utf-8")


@dataclass(frozen=True)
class CategoricalDistribution:
    categories: tuple[str, ...]
    counts: tuple[int, ...]
    fractions: tuple[float, ...]
    n: int

    def probabilities(self) -> dict[str, float]:
        return dict(zip(self.categories, self.fractions))

    def to_jsonable(self) -> dict:
        return {
            "kind": "categorical",
            "categories": list(self.categories),
            "counts": list(self.counts),
            "fractions": list(self.fractions),
            "n": self.n,
        }


@dataclass(frozen=True)
class NumericDistribution:
    bin_edges: tuple[float, ...]
    counts: tuple[int, ...]
    fractions: tuple[float, ...]
    n: int
    minimum: float | None
    maximum: float | None
    mean: float | None

    def to_jsonable(self) -> dict:
        return {
            "kind": "numerical",
            "bin_edges": list(self.bin_edges),
            "counts": list(self.counts),
            "fractions": list(self.fractions),
            "n": self.n,
            "min": self.minimum,
            "max": self.maximum,
            "mean": self.mean,
        }


DistributionSummary = CategoricalDistribution | NumericDistribution


def resolve_subset(ds: Dataset, subset: Iterable[int] | None) -> np.ndarray:
    """Validate and normalize a row-index subset to a sorted unique array.
    None means all rows."""
    if subset is None:
        return np.arange(ds.n_rows)
    idx = np.asarray(sorted(set(int(i) for i in subset)), dtype=np.int64)
    if idx.size and (idx[0] < 0 or idx[-1] >= ds.n_rows):
        bad = idx[0] if idx[0] < 0 else idx[-1]
        raise InvalidSubset(f"row index {bad} outside 0..{ds.n_rows - 1}")
    return idx


def bin_index(edges: Sequence[float], values: np.ndarray) -> np.ndarray:
    """Histogram bin of each value: edges[i] <= v < edges[i+1], with the
    last bin closed on the right."""
    idx = np.searchsorted(np.asarray(edges), values, side="right") - 1
    return np.clip(idx, 0, len(edges) - 2)


def column_distribution(
    ds: Dataset, column: str, subset: Iterable[int] | None = None
) -> DistributionSummary:
    """Distribution of a column over a row subset, missing cells excluded.

    Categorical columns report counts over the full dataset's category
    universe (so disjoint subsets stay comparable); numerical columns are
    binned on the dataset-wide grid fixed at load.  An empty or all-missing
    subset yields n=0 with zero fractions.
    """
    col = ds.column(column)
    idx = resolve_subset(ds, subset)
    if col.kind.is_categorical:
        codes = col.codes[idx]
        codes = codes[codes >= 0]
        counts = np.bincount(codes, minlength=len(col.categories))
        n = int(counts.sum())
        fractions = counts / n if n else np.zeros_like(counts, dtype=float)
        return CategoricalDistribution(
            categories=col.categories,
            counts=tuple(int(c) for c in counts),
            fractions=tuple(float(f) for f in fractions),
            n=n,
        )
    values = col.numbers[idx]
    values = values[~np.isnan(values)]
    n = values.size
    nbins = len(col.bin_edges) - 1
    if n:
        counts = np.bincount(bin_index(col.bin_edges, values), minlength=nbins)
    else:
        counts = np.zeros(nbins, dtype=np.int64)
    fractions = counts / n if n else np.zeros(nbins)
    return NumericDistribution(
        bin_edges=col.bin_edges,
        counts=tuple(int(c) for c in counts),
        fractions=tuple(float(f) for f in fractions),
        n=int(n),
        minimum=float(values.min()) if n else None,
        maximum=float(values.max()) if n else None,
        mean=float(values.mean()) if n else None,
    )
