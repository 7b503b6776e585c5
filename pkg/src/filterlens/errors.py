"""Exception types shared across the engine.

Every error carries a stable machine-readable ``code`` (the class name)
that the HTTP API and CLI surface verbatim, so callers can dispatch on it
without parsing messages.
"""


class ExplorerError(Exception):
    """Base class for all engine errors."""

    @property
    def code(self) -> str:
        return type(self).__name__


# Input / parsing problems.  The HTTP layer maps these to 400.

class MalformedCsv(ExplorerError):
    """CSV is structurally unusable: ragged rows, duplicate or empty header."""


class EmptyDataset(ExplorerError):
    """CSV parsed fine but holds zero data rows."""


class AllMissing(ExplorerError):
    """A column has no non-missing cell, so its type cannot be inferred."""


class InvalidOverride(ExplorerError):
    """A type override names a column whose values do not support it."""


class InvalidConstraint(ExplorerError):
    """Filter constraint is malformed or incompatible with its column."""


class InvalidConfig(ExplorerError):
    """Similarity configuration violates its invariants."""


class InvalidSubset(ExplorerError):
    """A row-index subset references rows outside the dataset."""


class NotADistribution(ExplorerError):
    """Probability vector has negative mass or does not sum to one."""


# Missing things.  The HTTP layer maps these to 404.

class UnknownColumn(ExplorerError):
    """Referenced column does not exist in the dataset."""


class UnknownDataset(ExplorerError):
    """No stored dataset with the given id."""


class UnknownSession(ExplorerError):
    """No session with the given id."""


# Domain errors on structurally valid requests.  The HTTP layer maps these
# to 422 and the CLI to exit status 2.

class EmptyIncluded(ExplorerError):
    """Filter stack matches no rows."""


class EmptyComplement(ExplorerError):
    """Filter stack matches every row, leaving nothing to compare against."""


class EmptySubset(ExplorerError):
    """A required subset is empty or has no usable outcome values."""


class EmptySample(ExplorerError):
    """A sample handed to a two-sample statistic is empty."""


class TooFewRows(ExplorerError):
    """Fewer than two usable rows; the statistic is undefined."""


class NoUsableFeatures(ExplorerError):
    """No similarity feature is available, or a row pair shares none."""


class NotInStack(ExplorerError):
    """Attempted to remove a constraint on a column that is not filtered."""


class OutcomeConstraint(ExplorerError):
    """Attempted to filter on the outcome column itself."""
