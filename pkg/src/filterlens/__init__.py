"""Interactive counterfactual analysis of filtered tabular data.

Load a CSV, pick an outcome column, push filters: rows split into the
included subset, the counterfactual subset (excluded rows most similar to
the included ones), and the excluded subset.  Divergence between the
included and counterfactual outcome distributions grades each filter
weak, moderate, or strong.
"""

from .dataset import (
    CategoricalDistribution,
    Column,
    ColumnKind,
    Dataset,
    NumericDistribution,
    column_distribution,
    infer_column_type,
    load_csv,
    to_csv_bytes,
)
from .errors import ExplorerError
from .filters import (
    CategorySet,
    FilterConstraint,
    FilterStack,
    NumericRange,
    category_set,
    format_constraint,
    matches,
    numeric_range,
    parse_constraint,
)
from .measures import (
    AssociationRecord,
    Measure,
    Method,
    Strength,
    association,
    classify_strength,
    hellinger,
    in_cf_difference,
    ks_statistic,
    outcome_distribution,
    sort_associations,
)
from .partition import (
    SimilarityConfig,
    SubsetPartition,
    mean_distance_to_included,
    normalized_distance,
    partition,
)
from .session import AnalysisSnapshot, Mode, Session

__version__ = "0.1.0"

__all__ = [
    "AnalysisSnapshot",
    "AssociationRecord",
    "CategoricalDistribution",
    "CategorySet",
    "Column",
    "ColumnKind",
    "Dataset",
    "ExplorerError",
    "FilterConstraint",
    "FilterStack",
    "Measure",
    "Method",
    "Mode",
    "NumericDistribution",
    "NumericRange",
    "Session",
    "SimilarityConfig",
    "Strength",
    "SubsetPartition",
    "association",
    "category_set",
    "classify_strength",
    "column_distribution",
    "format_constraint",
    "hellinger",
    "in_cf_difference",
    "infer_column_type",
    "ks_statistic",
    "load_csv",
    "matches",
    "mean_distance_to_included",
    "normalized_distance",
    "numeric_range",
    "outcome_distribution",
    "parse_constraint",
    "partition",
    "sort_associations",
    "to_csv_bytes",
    "__version__",
]
