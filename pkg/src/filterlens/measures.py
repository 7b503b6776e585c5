"""Divergence measures, filter-strength classification, and associations.

The filter-strength scale sits on a single difference value d in [0, 1]:
Hellinger distance between the included and counterfactual outcome
distributions for categorical outcomes, the two-sample Kolmogorov-Smirnov
statistic for numerical ones.  Bands: weak for d <= 0.40, strong for
d >= 0.60, moderate in between.

Associations between a feature and the outcome use the measure matched to
the type pair: Pearson correlation for numerical/numerical, R^2 of the
one-hot regression for categorical/numerical (computed via the equivalent
between-group sum of squares), and Cramer's V for categorical/categorical.
A feature or outcome that is constant within the subset associates at 0.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .dataset import Dataset, column_distribution, resolve_subset
from .errors import EmptySample, EmptySubset, NotADistribution, TooFewRows

WEAK_MAX = 0.40
STRONG_MIN = 0.60

MASS_TOLERANCE = 1e-6


class Strength(str, Enum):
    WEAK = "weak"
    MODERATE = "moderate"
    STRONG = "strong"


class Measure(str, Enum):
    HELLINGER = "hellinger"
    KOLMOGOROV_SMIRNOV = "kolmogorov_smirnov"


class Method(str, Enum):
    PEARSON = "pearson"
    REGRESSION_R2 = "regression_r2"
    CRAMERS_V = "cramers_v"


def _check_distribution(p: Mapping[str, float], label: str) -> None:
    total = 0.0
    for key, mass in p.items():
        if mass < 0:
            raise NotADistribution(f"{label}[{key!r}] = {mass} is negative")
        total += mass
    if abs(total - 1.0) > MASS_TOLERANCE:
        raise NotADistribution(f"{label} sums to {total}, expected 1")


def hellinger(p: Mapping[str, float], q: Mapping[str, float]) -> float:
    """Hellinger distance between two discrete distributions over the
    union of their category keys.  Always lands in [0, 1]."""
    _check_distribution(p, "p")
    _check_distribution(q, "q")
    bc = 0.0
    for key in set(p) | set(q):
        bc += math.sqrt(p.get(key, 0.0) * q.get(key, 0.0))
    return min(1.0, math.sqrt(max(0.0, 1.0 - bc)))


def ks_statistic(x: Iterable[float], y: Iterable[float]) -> float:
    """Exact two-sample Kolmogorov-Smirnov statistic: the largest gap
    between the two empirical CDFs, evaluated at every sample point."""
    xs = np.sort(np.asarray(list(x), dtype=float))
    ys = np.sort(np.asarray(list(y), dtype=float))
    if xs.size == 0 or ys.size == 0:
        raise EmptySample("both samples must be nonempty")
    if np.isnan(xs).any() or np.isnan(ys).any():
        raise ValueError("samples must not contain NaN")
    grid = np.concatenate([xs, ys])
    fx = np.searchsorted(xs, grid, side="right") / xs.size
    fy = np.searchsorted(ys, grid, side="right") / ys.size
    return float(np.abs(fx - fy).max())


def classify_strength(d: float) -> Strength:
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"difference {d} outside [0, 1]")
    if d <= WEAK_MAX:
        return Strength.WEAK
    if d < STRONG_MIN:
        return Strength.MODERATE
    return Strength.STRONG


@dataclass(frozen=True)
class SubsetOutcome:
    """Outcome values of one subset: category probabilities when the
    outcome is categorical, the raw non-missing sample when numerical."""

    n: int
    probabilities: dict[str, float] | None = None
    sample: np.ndarray | None = None


@dataclass(frozen=True)
class OutcomeDistribution:
    outcome: str
    categorical: bool
    subsets: dict[str, SubsetOutcome]


def outcome_distribution(
    ds: Dataset, outcome: str, subsets: Mapping[str, Iterable[int]]
) -> OutcomeDistribution:
    """Collect per-subset outcome material for divergence computation."""
    col = ds.column(outcome)
    out: dict[str, SubsetOutcome] = {}
    if col.kind.is_categorical:
        for label, rows in subsets.items():
            dist = column_distribution(ds, outcome, rows)
            out[label] = SubsetOutcome(n=dist.n, probabilities=dist.probabilities())
        return OutcomeDistribution(outcome, True, out)
    for label, rows in subsets.items():
        values = col.numbers[resolve_subset(ds, rows)]
        values = values[~np.isnan(values)]
        out[label] = SubsetOutcome(n=int(values.size), sample=values)
    return OutcomeDistribution(outcome, False, out)


def in_cf_difference(dist: OutcomeDistribution) -> tuple[float, Measure]:
    """Difference d between the included and counterfactual outcome
    distributions, with the measure that produced it."""
    for label in ("in", "cf"):
        sub = dist.subsets.get(label)
        if sub is None or sub.n == 0:
            raise EmptySubset(f"subset {label!r} has no usable outcome values")
    if dist.categorical:
        return (
            hellinger(dist.subsets["in"].probabilities, dist.subsets["cf"].probabilities),
            Measure.HELLINGER,
        )
    return (
        ks_statistic(dist.subsets["in"].sample, dist.subsets["cf"].sample),
        Measure.KOLMOGOROV_SMIRNOV,
    )


@dataclass(frozen=True)
class AssociationRecord:
    feature: str
    value: float
    method: Method
    scope: str


def _pearson(x: np.ndarray, y: np.ndarray) -> float:
    xm = x - x.mean()
    ym = y - y.mean()
    sx = math.sqrt(float(xm @ xm))
    sy = math.sqrt(float(ym @ ym))
    if sx == 0.0 or sy == 0.0:
        return 0.0
    return max(-1.0, min(1.0, float(xm @ ym) / (sx * sy)))


def _group_r2(codes: np.ndarray, y: np.ndarray) -> float:
    """R^2 of regressing y on the one-hot encoding of codes.  With an
    intercept that regression fits group means exactly, so R^2 equals
    SS_between / SS_total."""
    ym = y - y.mean()
    sst = float(ym @ ym)
    if sst == 0.0:
        return 0.0
    ssb = 0.0
    for code in np.unique(codes):
        group = y[codes == code]
        delta = group.mean() - y.mean()
        ssb += group.size * delta * delta
    return max(0.0, min(1.0, ssb / sst))


def _cramers_v(a: np.ndarray, b: np.ndarray) -> float:
    _, ai = np.unique(a, return_inverse=True)
    _, bi = np.unique(b, return_inverse=True)
    table = np.zeros((ai.max() + 1, bi.max() + 1))
    np.add.at(table, (ai, bi), 1.0)
    k = min(table.shape[0] - 1, table.shape[1] - 1)
    if k == 0:
        return 0.0
    n = table.sum()
    expected = table.sum(axis=1, keepdims=True) * table.sum(axis=0, keepdims=True) / n
    chi2 = float(((table - expected) ** 2 / expected).sum())
    return max(0.0, min(1.0, math.sqrt(chi2 / (n * k))))


def association(
    ds: Dataset,
    feature: str,
    outcome: str,
    subset: Iterable[int] | None = None,
    scope: str = "all",
) -> AssociationRecord:
    """Association between a feature and the outcome over a subset, using
    only rows where both values are present.  Raises TooFewRows below two
    usable rows."""
    col_f = ds.column(feature)
    col_o = ds.column(outcome)
    idx = resolve_subset(ds, subset)
    ok = ~col_f.missing[idx] & ~col_o.missing[idx]
    idx = idx[ok]
    if idx.size < 2:
        raise TooFewRows(
            f"{idx.size} usable rows for {feature!r} vs {outcome!r}, need at least 2"
        )
    if not col_f.kind.is_categorical and not col_o.kind.is_categorical:
        value = _pearson(col_f.numbers[idx], col_o.numbers[idx])
        method = Method.PEARSON
    elif col_f.kind.is_categorical and col_o.kind.is_categorical:
        value = _cramers_v(col_f.codes[idx], col_o.codes[idx])
        method = Method.CRAMERS_V
    elif col_f.kind.is_categorical:
        value = _group_r2(col_f.codes[idx], col_o.numbers[idx])
        method = Method.REGRESSION_R2
    else:
        value = _group_r2(col_o.codes[idx], col_f.numbers[idx])
        method = Method.REGRESSION_R2
    return AssociationRecord(feature=feature, value=value, method=method, scope=scope)


def sort_associations(
    records: Iterable[AssociationRecord],
    descending: bool = True,
    by_magnitude: bool = False,
) -> list[AssociationRecord]:
    """Sort by value (or |value|), ties broken by feature name."""

    def key(r: AssociationRecord) -> float:
        return abs(r.value) if by_magnitude else r.value

    return sorted(records, key=lambda r: (-key(r) if descending else key(r), r.feature))
