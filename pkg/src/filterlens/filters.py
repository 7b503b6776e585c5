"""Filter constraints and the filter stack.

A constraint is one predicate on one column: an inclusive numeric range
for numerical columns or a category set for categorical columns.  A stack
is an ordered conjunction with at most one constraint per column; pushing
a column that is already constrained replaces its predicate in place.
Missing cells never match any predicate.

Text syntax (used by the CLI):

    col:lo..hi     numeric range; either bound may be omitted for an
                   open end, e.g. "age:30.." or "score:..0.5"
    col=a|b|c      category set
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import Dataset, parse_number
from .errors import InvalidConstraint, NotInStack, UnknownColumn


@dataclass(frozen=True)
class NumericRange:
    """Inclusive range; -inf/+inf encode open ends."""

    lo: float
    hi: float

    def __post_init__(self):
        if np.isnan(self.lo) or np.isnan(self.hi):
            raise InvalidConstraint("range bounds cannot be NaN")
        if self.lo > self.hi:
            raise InvalidConstraint(f"empty range: {self.lo} > {self.hi}")


@dataclass(frozen=True)
class CategorySet:
    values: frozenset[str]

    def __post_init__(self):
        if not self.values:
            raise InvalidConstraint("category set cannot be empty")


@dataclass(frozen=True)
class FilterConstraint:
    column: str
    predicate: NumericRange | CategorySet

    def to_jsonable(self) -> dict:
        if isinstance(self.predicate, NumericRange):
            lo = None if self.predicate.lo == -np.inf else self.predicate.lo
            hi = None if self.predicate.hi == np.inf else self.predicate.hi
            return {"column": self.column, "range": [lo, hi]}
        return {"column": self.column, "categories": sorted(self.predicate.values)}


def numeric_range(column: str, lo: float | None, hi: float | None) -> FilterConstraint:
    lo = -np.inf if lo is None else float(lo)
    hi = np.inf if hi is None else float(hi)
    return FilterConstraint(column, NumericRange(lo, hi))


def category_set(column: str, values) -> FilterConstraint:
    return FilterConstraint(column, CategorySet(frozenset(str(v) for v in values)))


def validate_constraint(ds: Dataset, constraint: FilterConstraint) -> None:
    """Check a constraint against a dataset: the column must exist, the
    predicate must match the column's type, and category sets may only
    name observed categories."""
    col = ds.column(constraint.column)
    pred = constraint.predicate
    if isinstance(pred, NumericRange):
        if col.kind.is_categorical:
            raise InvalidConstraint(
                f"numeric range on categorical column {col.name!r}"
            )
    else:
        if not col.kind.is_categorical:
            raise InvalidConstraint(
                f"category set on numerical column {col.name!r}"
            )
        unknown = sorted(pred.values - set(col.categories))
        if unknown:
            raise InvalidConstraint(
                f"categories not observed in column {col.name!r}: {', '.join(unknown)}"
            )


def matches(ds: Dataset, row: int, constraint: FilterConstraint) -> bool:
    """Whether one row satisfies a constraint.  Missing cells never match."""
    col = ds.column(constraint.column)
    pred = constraint.predicate
    if col.missing[row]:
        return False
    if isinstance(pred, NumericRange):
        if col.kind.is_categorical:
            raise InvalidConstraint(f"numeric range on categorical column {col.name!r}")
        value = col.numbers[row]
        return bool(pred.lo <= value <= pred.hi)
    if not col.kind.is_categorical:
        raise InvalidConstraint(f"category set on numerical column {col.name!r}")
    return col.cells[row] in pred.values


def constraint_mask(ds: Dataset, constraint: FilterConstraint) -> np.ndarray:
    """Boolean match mask over all rows."""
    validate_constraint(ds, constraint)
    col = ds.column(constraint.column)
    pred = constraint.predicate
    if isinstance(pred, NumericRange):
        values = col.numbers
        with np.errstate(invalid="ignore"):
            mask = (values >= pred.lo) & (values <= pred.hi)
        return mask & ~col.missing
    wanted = np.array(
        [cat in pred.values for cat in col.categories] or [False], dtype=bool
    )
    codes = col.codes
    mask = np.zeros(len(col), dtype=bool)
    ok = codes >= 0
    mask[ok] = wanted[codes[ok]]
    return mask


@dataclass(frozen=True)
class FilterStack:
    """Ordered conjunction of constraints, at most one per column."""

    constraints: tuple[FilterConstraint, ...] = ()

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(c.column for c in self.constraints)

    def __len__(self) -> int:
        return len(self.constraints)

    def with_constraint(self, constraint: FilterConstraint) -> "FilterStack":
        """Push, replacing in place any existing constraint on the column."""
        out = list(self.constraints)
        for i, existing in enumerate(out):
            if existing.column == constraint.column:
                out[i] = constraint
                return FilterStack(tuple(out))
        out.append(constraint)
        return FilterStack(tuple(out))

    def without(self, column: str) -> "FilterStack":
        if column not in self.columns:
            raise NotInStack(f"no constraint on column {column!r}")
        return FilterStack(tuple(c for c in self.constraints if c.column != column))


def included_mask(ds: Dataset, stack: FilterStack) -> np.ndarray:
    """Conjunction of all constraints as a boolean mask.  An empty stack
    includes every row."""
    mask = np.ones(ds.n_rows, dtype=bool)
    for constraint in stack.constraints:
        mask &= constraint_mask(ds, constraint)
    return mask


def parse_constraint(text: str) -> FilterConstraint:
    """Parse the text syntax: ``col:lo..hi`` or ``col=a|b``.  The first
    ``:`` or ``=`` in the string separates the column name."""
    colon = text.find(":")
    equals = text.find("=")
    if colon == -1 and equals == -1:
        raise InvalidConstraint(
            f"cannot parse {text!r}: expected 'col:lo..hi' or 'col=a|b'"
        )
    if equals == -1 or (colon != -1 and colon < equals):
        column, _, body = text.partition(":")
        if not column:
            raise InvalidConstraint(f"missing column name in {text!r}")
        if ".." not in body:
            raise InvalidConstraint(f"range {body!r} must look like 'lo..hi'")
        lo_text, _, hi_text = body.partition("..")
        lo = hi = None
        if lo_text:
            lo = parse_number(lo_text)
            if lo is None:
                raise InvalidConstraint(f"bad lower bound {lo_text!r}")
        if hi_text:
            hi = parse_number(hi_text)
            if hi is None:
                raise InvalidConstraint(f"bad upper bound {hi_text!r}")
        return numeric_range(column, lo, hi)
    column, _, body = text.partition("=")
    if not column:
        raise InvalidConstraint(f"missing column name in {text!r}")
    values = body.split("|")
    if any(v == "" for v in values):
        raise InvalidConstraint(f"empty category in {text!r}")
    return category_set(column, values)


def constraint_from_jsonable(obj: dict) -> FilterConstraint:
    """Inverse of FilterConstraint.to_jsonable, for log replay."""
    if not isinstance(obj, dict) or "column" not in obj:
        raise InvalidConstraint(f"not a constraint object: {obj!r}")
    if "range" in obj:
        lo, hi = obj["range"]
        return numeric_range(obj["column"], lo, hi)
    if "categories" in obj:
        return category_set(obj["column"], obj["categories"])
    raise InvalidConstraint(f"constraint object needs 'range' or 'categories': {obj!r}")


def format_constraint(constraint: FilterConstraint) -> str:
    """Inverse of parse_constraint, for display."""
    pred = constraint.predicate
    if isinstance(pred, CategorySet):
        return f"{constraint.column}={'|'.join(sorted(pred.values))}"

    def fmt(v: float) -> str:
        return f"{v:g}"

    lo = "" if pred.lo == -np.inf else fmt(pred.lo)
    hi = "" if pred.hi == np.inf else fmt(pred.hi)
    return f"{constraint.column}:{lo}..{hi}"
