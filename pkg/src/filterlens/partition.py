"""Counterfactual partition of a filtered dataset.

The filter stack splits rows into the included subset and its complement.
Complement rows are ranked by mean normalized distance to the included
rows and split into the counterfactual subset (the nearest
ceil(cf_fraction * m) rows) and the excluded subset (the rest).

Distance between two rows is a normalized Euclidean distance over the
similarity features: numerical values are min-max scaled over the full
dataset before the squared difference is taken, and a categorical feature
contributes 0 when the two cells are equal and 1 when they differ.
Features missing in either row are dropped from the sum and from the
feature count, so the distance is sqrt(sum of squared differences divided
by the number of shared features).  A pair sharing no feature at all
raises NoUsableFeatures.

When the included side holds more than ``in_sample_cap`` rows, the mean is
taken against a uniform sample of that size drawn with the configured
seed, so large included subsets stay cheap while results remain
reproducible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .dataset import Dataset
from .errors import (
    EmptyComplement,
    EmptyIncluded,
    InvalidConfig,
    InvalidSubset,
    NoUsableFeatures,
)
from .filters import FilterStack, included_mask

_BLOCK_CELLS = 4_000_000


@dataclass(frozen=True)
class SimilarityConfig:
    """Knobs for the distance and the split.

    ``features`` of None means every column except the outcome and the
    constrained columns; an explicit tuple is filtered the same way on
    use.  ``in_sample_cap`` of None disables sampling.
    """

    features: tuple[str, ...] | None = None
    cf_fraction: float = 0.5
    in_sample_cap: int | None = 1000
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.cf_fraction < 1.0:
            raise InvalidConfig(f"cf_fraction {self.cf_fraction} outside (0, 1)")
        if self.in_sample_cap is not None and self.in_sample_cap < 1:
            raise InvalidConfig(f"in_sample_cap {self.in_sample_cap} must be >= 1")

    def to_jsonable(self) -> dict:
        return {
            "features": list(self.features) if self.features is not None else None,
            "cf_fraction": self.cf_fraction,
            "in_sample_cap": self.in_sample_cap,
            "seed": self.seed,
        }


def resolve_features(
    ds: Dataset,
    cfg: SimilarityConfig,
    outcome: str | None = None,
    stack: FilterStack | None = None,
) -> tuple[str, ...]:
    """Columns the distance runs over: the configured features (or all
    columns), minus the outcome and any constrained column."""
    if cfg.features is not None:
        for name in cfg.features:
            ds.column(name)
        candidates = cfg.features
    else:
        candidates = ds.column_names
    blocked = set(stack.columns) if stack is not None else set()
    if outcome is not None:
        blocked.add(outcome)
    seen = set()
    out = []
    for name in candidates:
        if name in blocked or name in seen:
            continue
        seen.add(name)
        out.append(name)
    if not out:
        raise NoUsableFeatures("no similarity features left after exclusions")
    return tuple(out)


class _DistanceSpace:
    """Per-feature arrays prepared for distance computation."""

    def __init__(self, ds: Dataset, features: tuple[str, ...]):
        self.numeric: list[np.ndarray] = []
        self.codes: list[np.ndarray] = []
        for name in features:
            col = ds.column(name)
            if col.kind.is_categorical:
                self.codes.append(col.codes)
            else:
                lo = np.nanmin(col.numbers)
                hi = np.nanmax(col.numbers)
                span = hi - lo
                if span > 0:
                    self.numeric.append((col.numbers - lo) / span)
                else:
                    self.numeric.append(col.numbers - lo)

    def mean_to(self, rows: np.ndarray, anchors: np.ndarray) -> np.ndarray:
        """Mean pairwise distance from each of ``rows`` to the anchor set,
        computed blockwise to bound memory."""
        out = np.empty(rows.size)
        block = max(1, _BLOCK_CELLS // max(1, anchors.size))
        for start in range(0, rows.size, block):
            chunk = rows[start : start + block]
            d2 = np.zeros((chunk.size, anchors.size))
            count = np.zeros((chunk.size, anchors.size))
            for scaled in self.numeric:
                a = scaled[chunk][:, None]
                b = scaled[anchors][None, :]
                valid = ~np.isnan(a) & ~np.isnan(b)
                diff = np.where(valid, a - b, 0.0)
                d2 += diff * diff
                count += valid
            for codes in self.codes:
                a = codes[chunk][:, None]
                b = codes[anchors][None, :]
                valid = (a >= 0) & (b >= 0)
                d2 += (a != b) & valid
                count += valid
            if (count == 0).any():
                raise NoUsableFeatures("a row pair shares no non-missing feature")
            out[start : start + block] = np.sqrt(d2 / count).mean(axis=1)
        return out

    def pair(self, a: int, b: int) -> float:
        d2 = 0.0
        count = 0
        for scaled in self.numeric:
            va, vb = scaled[a], scaled[b]
            if not (np.isnan(va) or np.isnan(vb)):
                d2 += float(va - vb) ** 2
                count += 1
        for codes in self.codes:
            ca, cb = codes[a], codes[b]
            if ca >= 0 and cb >= 0:
                d2 += float(ca != cb)
                count += 1
        if count == 0:
            raise NoUsableFeatures(f"rows {a} and {b} share no non-missing feature")
        return math.sqrt(d2 / count)


def _check_row(ds: Dataset, row: int) -> int:
    if not 0 <= row < ds.n_rows:
        raise InvalidSubset(f"row index {row} outside 0..{ds.n_rows - 1}")
    return int(row)


def normalized_distance(
    ds: Dataset,
    a: int,
    b: int,
    cfg: SimilarityConfig | None = None,
    outcome: str | None = None,
    stack: FilterStack | None = None,
) -> float:
    cfg = cfg or SimilarityConfig()
    features = resolve_features(ds, cfg, outcome=outcome, stack=stack)
    space = _DistanceSpace(ds, features)
    return space.pair(_check_row(ds, a), _check_row(ds, b))


def sample_included(in_rows: np.ndarray, cfg: SimilarityConfig) -> np.ndarray:
    """The anchor rows distances are averaged against: all included rows,
    or a seeded uniform sample of in_sample_cap of them."""
    if cfg.in_sample_cap is None or in_rows.size <= cfg.in_sample_cap:
        return in_rows
    rng = np.random.default_rng(cfg.seed)
    return np.sort(rng.choice(in_rows, size=cfg.in_sample_cap, replace=False))


def mean_distance_to_included(
    ds: Dataset,
    row: int,
    in_rows,
    cfg: SimilarityConfig | None = None,
    outcome: str | None = None,
    stack: FilterStack | None = None,
) -> float:
    cfg = cfg or SimilarityConfig()
    features = resolve_features(ds, cfg, outcome=outcome, stack=stack)
    space = _DistanceSpace(ds, features)
    anchors = sample_included(np.asarray(sorted(in_rows), dtype=np.int64), cfg)
    if anchors.size == 0:
        raise EmptyIncluded("no included rows to measure against")
    row = _check_row(ds, row)
    return float(space.mean_to(np.array([row]), anchors)[0])


@dataclass(frozen=True)
class SubsetPartition:
    in_rows: tuple[int, ...]
    cf_rows: tuple[int, ...]
    ex_rows: tuple[int, ...]
    mean_distance: dict[int, float]
    features: tuple[str, ...]
    config: SimilarityConfig

    def to_jsonable(self) -> dict:
        return {
            "in_rows": list(self.in_rows),
            "cf_rows": list(self.cf_rows),
            "ex_rows": list(self.ex_rows),
            "mean_distance": {str(k): v for k, v in sorted(self.mean_distance.items())},
            "features": list(self.features),
            "config": self.config.to_jsonable(),
        }


def partition(
    ds: Dataset,
    stack: FilterStack,
    cfg: SimilarityConfig | None = None,
    outcome: str | None = None,
) -> SubsetPartition:
    """Split rows into included / counterfactual / excluded.

    Complement rows are sorted by (mean distance, row index) ascending and
    the first ceil(cf_fraction * m) become counterfactual, so the split is
    deterministic even under distance ties.
    """
    cfg = cfg or SimilarityConfig()
    mask = included_mask(ds, stack)
    in_idx = np.nonzero(mask)[0]
    comp_idx = np.nonzero(~mask)[0]
    if in_idx.size == 0:
        raise EmptyIncluded("filter stack matches no rows")
    if comp_idx.size == 0:
        raise EmptyComplement("filter stack matches every row")
    features = resolve_features(ds, cfg, outcome=outcome, stack=stack)
    space = _DistanceSpace(ds, features)
    anchors = sample_included(in_idx, cfg)
    distances = space.mean_to(comp_idx, anchors)
    order = np.lexsort((comp_idx, distances))
    n_cf = math.ceil(cfg.cf_fraction * comp_idx.size)
    cf = comp_idx[order[:n_cf]]
    ex = comp_idx[order[n_cf:]]
    return SubsetPartition(
        in_rows=tuple(int(i) for i in in_idx),
        cf_rows=tuple(int(i) for i in np.sort(cf)),
        ex_rows=tuple(int(i) for i in np.sort(ex)),
        mean_distance={int(r): float(d) for r, d in zip(comp_idx, distances)},
        features=features,
        config=cfg,
    )
