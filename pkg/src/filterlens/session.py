"""Analysis sessions: a dataset, an outcome, a filter stack, and the
snapshot computed from them.

A snapshot is a pure function of (dataset, outcome, stack, config, mode);
every stack edit recomputes from scratch rather than patching state, which
keeps replayed sessions byte-identical to live ones.  Edits that would
fail (empty included set, empty complement) leave the stack unchanged.

In counterfactual mode the visible subsets are IN / CF / EX and the filter
strength is the divergence between the IN and CF outcome distributions.
Control mode replaces CF and EX with their union (the whole complement)
and computes no distances and no strength: it is the "everything else"
baseline a counterfactual reading should be compared against.
"""
from __future__ import annotations

import uuid
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

import numpy as np

from .dataset import ColumnKind, Dataset, DistributionSummary, column_distribution
from .errors import (
    EmptyComplement,
    EmptyIncluded,
    InvalidConfig,
    NoUsableFeatures,
    OutcomeConstraint,
    TooFewRows,
)
from .filters import (
    FilterConstraint,
    FilterStack,
    constraint_from_jsonable,
    included_mask,
    validate_constraint,
)
from .measures import (
    Measure,
    Method,
    Strength,
    association,
    classify_strength,
    in_cf_difference,
    outcome_distribution,
)
from .partition import SimilarityConfig, partition, resolve_features


class Mode(str, Enum):
    COUNTERFACTUAL = "counterfactual"
    CONTROL = "control"


@dataclass(frozen=True)
class SubsetInfo:
    rows: tuple[int, ...]
    count: int
    fraction: float

    def to_jsonable(self) -> dict:
        return {"rows": list(self.rows), "count": self.count, "fraction": self.fraction}


@dataclass(frozen=True)
class StrengthReport:
    d: float
    measure: Measure
    strength: Strength
    sizes: dict[str, int]

    def to_jsonable(self) -> dict:
        return {
            "d": self.d,
            "measure": self.measure.value,
            "strength": self.strength.value,
            "sizes": dict(self.sizes),
        }


@dataclass(frozen=True)
class AssociationEntry:
    feature: str
    method: Method
    values: dict[str, float | None]

    def to_jsonable(self) -> dict:
        return {
            "feature": self.feature,
            "method": self.method.value,
            "values": dict(self.values),
        }


@dataclass(frozen=True)
class FeatureDetail:
    feature: str
    kind: ColumnKind
    distributions: dict[str, DistributionSummary]

    def to_jsonable(self) -> dict:
        labels = list(self.distributions)
        first = self.distributions[labels[0]]
        if self.kind.is_categorical:
            axis = {"categories": list(first.categories)}
        else:
            axis = {"bin_edges": list(first.bin_edges)}
        return {
            "feature": self.feature,
            "kind": self.kind.value,
            "distributions": {k: v.to_jsonable() for k, v in self.distributions.items()},
            "pairing": {
                "labels": labels,
                **axis,
                "fractions": {k: list(v.fractions) for k, v in self.distributions.items()},
                "counts": {k: list(v.counts) for k, v in self.distributions.items()},
            },
        }


@dataclass(frozen=True)
class AnalysisSnapshot:
    mode: Mode
    outcome: str
    n_rows: int
    config: SimilarityConfig
    similarity_features: tuple[str, ...]
    filters: tuple[FilterConstraint, ...]
    subsets: dict[str, SubsetInfo]
    distances: dict[int, float] | None
    outcome_distributions: dict[str, DistributionSummary]
    strength: StrengthReport | None
    associations: tuple[AssociationEntry, ...]
    selected_feature: str | None
    feature_detail: FeatureDetail | None

    def to_jsonable(self) -> dict:
        if self.distances is None:
            distances = None
        else:
            rows = sorted(self.distances)
            distances = {"rows": rows, "values": [self.distances[r] for r in rows]}
        return {
            "mode": self.mode.value,
            "outcome": self.outcome,
            "n_rows": self.n_rows,
            "config": self.config.to_jsonable(),
            "similarity_features": list(self.similarity_features),
            "filters": [c.to_jsonable() for c in self.filters],
            "subsets": {k: v.to_jsonable() for k, v in self.subsets.items()},
            "distances": distances,
            "outcome_distributions": {
                k: v.to_jsonable() for k, v in self.outcome_distributions.items()
            },
            "strength": None if self.strength is None else self.strength.to_jsonable(),
            "associations": [a.to_jsonable() for a in self.associations],
            "selected_feature": self.selected_feature,
            "feature_detail": (
                None if self.feature_detail is None else self.feature_detail.to_jsonable()
            ),
        }


def _method_for(feature_kind: ColumnKind, outcome_kind: ColumnKind) -> Method:
    if feature_kind.is_categorical and outcome_kind.is_categorical:
        return Method.CRAMERS_V
    if feature_kind.is_categorical or outcome_kind.is_categorical:
        return Method.REGRESSION_R2
    return Method.PEARSON


class Session:
    """Mutable holder of one exploration: push and pop filters, read
    snapshots.  Every mutation is recorded in an event list that replays
    to an identical session."""

    def __init__(
        self,
        dataset: Dataset,
        outcome: str,
        mode: Mode | str = Mode.COUNTERFACTUAL,
        config: SimilarityConfig | None = None,
        session_id: str | None = None,
        dataset_ref: str | None = None,
    ):
        dataset.column(outcome)
        try:
            self._mode = Mode(mode)
        except ValueError:
            raise InvalidConfig(f"unknown mode {mode!r}") from None
        self._dataset = dataset
        self._outcome = outcome
        self._config = config or SimilarityConfig()
        self._stack = FilterStack()
        self._events: list[dict] = []
        self.session_id = session_id or uuid.uuid4().hex[:12]
        self.dataset_ref = dataset_ref if dataset_ref is not None else dataset.name

    @property
    def dataset(self) -> Dataset:
        return self._dataset

    @property
    def outcome(self) -> str:
        return self._outcome

    @property
    def mode(self) -> Mode:
        return self._mode

    @property
    def config(self) -> SimilarityConfig:
        return self._config

    @property
    def stack(self) -> FilterStack:
        return self._stack

    @property
    def events(self) -> tuple[dict, ...]:
        return tuple(self._events)

    def push_filter(self, constraint: FilterConstraint) -> AnalysisSnapshot:
        """Add or replace a constraint.  Fails without changing the stack
        if the constraint is invalid, targets the outcome, or would leave
        either side of the split empty."""
        if constraint.column == self._outcome:
            raise OutcomeConstraint(
                f"cannot filter on the outcome column {self._outcome!r}"
            )
        validate_constraint(self._dataset, constraint)
        candidate = self._stack.with_constraint(constraint)
        snap = self._compute(candidate)
        self._stack = candidate
        self._events.append({"op": "push", "constraint": constraint.to_jsonable()})
        return snap

    def pop_filter(self, column: str) -> AnalysisSnapshot:
        candidate = self._stack.without(column)
        snap = self._compute(candidate)
        self._stack = candidate
        self._events.append({"op": "pop", "column": column})
        return snap

    def snapshot(self, selected_feature: str | None = None) -> AnalysisSnapshot:
        return self._compute(self._stack, selected_feature)

    # Persistence.

    def to_log(self, dataset_ref: str | None = None) -> dict:
        """Serializable event log; replaying it against the same dataset
        rebuilds an equivalent session."""
        return {
            "dataset": dataset_ref if dataset_ref is not None else self.dataset_ref,
            "outcome": self._outcome,
            "mode": self._mode.value,
            "config": self._config.to_jsonable(),
            "events": [dict(e) for e in self._events],
        }

    @classmethod
    def from_log(
        cls, dataset: Dataset, log: dict, session_id: str | None = None
    ) -> "Session":
        raw = log.get("config") or {}
        features = raw.get("features")
        config = SimilarityConfig(
            features=tuple(features) if features is not None else None,
            cf_fraction=raw.get("cf_fraction", 0.5),
            in_sample_cap=raw.get("in_sample_cap", 1000),
            seed=raw.get("seed", 0),
        )
        session = cls(dataset, log["outcome"], log.get("mode", Mode.COUNTERFACTUAL),
                      config, session_id, dataset_ref=log.get("dataset"))
        for event in log.get("events", ()):
            op = event.get("op")
            if op == "push":
                session.push_filter(constraint_from_jsonable(event["constraint"]))
            elif op == "pop":
                session.pop_filter(event["column"])
            else:
                raise ValueError(f"unknown event op {op!r}")
        return session

    # Snapshot assembly.

    def _subset_rows(self, stack: FilterStack) -> tuple[dict[str, tuple[int, ...]], dict[int, float] | None]:
        ds = self._dataset
        if len(stack) == 0:
            everything = tuple(range(ds.n_rows))
            if self._mode is Mode.COUNTERFACTUAL:
                return {"in": everything, "cf": (), "ex": ()}, None
            return {"in": everything, "ex_control": ()}, None
        if self._mode is Mode.COUNTERFACTUAL:
            part = partition(ds, stack, self._config, outcome=self._outcome)
            return (
                {"in": part.in_rows, "cf": part.cf_rows, "ex": part.ex_rows},
                part.mean_distance,
            )
        mask = included_mask(ds, stack)
        in_idx = np.nonzero(mask)[0]
        comp_idx = np.nonzero(~mask)[0]
        # Same stack validity rules as counterfactual mode, so the two
        # modes accept exactly the same edits.
        if in_idx.size == 0:
            raise EmptyIncluded("filter stack matches no rows")
        if comp_idx.size == 0:
            raise EmptyComplement("filter stack matches every row")
        return (
            {
                "in": tuple(int(i) for i in in_idx),
                "ex_control": tuple(int(i) for i in comp_idx),
            },
            None,
        )

    def _compute(
        self, stack: FilterStack, selected_feature: str | None = None
    ) -> AnalysisSnapshot:
        ds = self._dataset
        rows_by_label, distances = self._subset_rows(stack)
        subsets = {
            label: SubsetInfo(rows=rows, count=len(rows), fraction=len(rows) / ds.n_rows)
            for label, rows in rows_by_label.items()
        }
        summaries = {
            label: column_distribution(ds, self._outcome, rows)
            for label, rows in rows_by_label.items()
        }

        strength = None
        if self._mode is Mode.COUNTERFACTUAL and len(stack) > 0:
            dist = outcome_distribution(
                ds, self._outcome,
                {"in": rows_by_label["in"], "cf": rows_by_label["cf"]},
            )
            d, measure = in_cf_difference(dist)
            strength = StrengthReport(
                d=d,
                measure=measure,
                strength=classify_strength(d),
                sizes={label: len(rows) for label, rows in rows_by_label.items()},
            )

        try:
            features = resolve_features(ds, self._config, self._outcome, stack)
        except NoUsableFeatures:
            # Control mode never computes distances, so a fully constrained
            # dataset is still viewable there; report no features.
            features = ()

        outcome_kind = ds.column(self._outcome).kind
        entries = []
        for name in ds.column_names:
            if name == self._outcome:
                continue
            values: dict[str, float | None] = {}
            for label, rows in rows_by_label.items():
                try:
                    values[label] = association(ds, name, self._outcome, rows, label).value
                except TooFewRows:
                    values[label] = None
            entries.append(
                AssociationEntry(
                    feature=name,
                    method=_method_for(ds.column(name).kind, outcome_kind),
                    values=values,
                )
            )

        detail = None
        if selected_feature is not None:
            col = ds.column(selected_feature)
            detail = FeatureDetail(
                feature=selected_feature,
                kind=col.kind,
                distributions={
                    label: column_distribution(ds, selected_feature, rows)
                    for label, rows in rows_by_label.items()
                },
            )

        return AnalysisSnapshot(
            mode=self._mode,
            outcome=self._outcome,
            n_rows=ds.n_rows,
            config=self._config,
            similarity_features=features,
            filters=stack.constraints,
            subsets=subsets,
            distances=distances,
            outcome_distributions=summaries,
            strength=strength,
            associations=tuple(entries),
            selected_feature=selected_feature,
            feature_detail=detail,
        )
