"""Exception hierarchy. Every error the public API raises derives from SimilnetError."""


class SimilnetError(Exception):
    """Base class for all similnet errors."""


class InvalidConfigError(SimilnetError):
    """A configuration value violates its invariants (e.g. panel larger than pool)."""


class NotFoundError(SimilnetError):
    """A referenced entity (catalog, session) does not exist."""


class WrongStateError(SimilnetError):
    """Operation applied in a session state that does not permit it."""


class InvalidSelectionError(SimilnetError):
    """A selection contains ids outside the currently shown panel."""


class OutOfRangeError(SimilnetError):
    """An event references a design id outside the matrix dimension."""


class InconsistentCountsError(SimilnetError):
    """Co-selection count exceeds co-occurrence count somewhere."""


class EmptyGraphError(SimilnetError):
    """Operation undefined on a graph with no vertices."""


class InvalidWeightError(SimilnetError):
    """Non-positive edge weight where a positive one is required."""


class InvalidPartitionError(SimilnetError):
    """A partition does not cover every vertex of the graph it is scored on."""


class UndefinedModularityError(SimilnetError):
    """Modularity is undefined (no edge mass)."""


class InvalidGridError(SimilnetError):
    """A threshold grid is not strictly increasing within [0, 1]."""


class NoSurvivorsError(SimilnetError):
    """Every grid entry of a sweep produced an empty graph."""


class InsufficientSupportError(SimilnetError):
    """Too few distinct degrees to attempt a power-law fit."""


class NoEdgesError(SimilnetError):
    """Operation undefined on an edgeless graph."""


class UndefinedResultError(SimilnetError):
    """A score has no defined value for the given inputs (e.g. empty overlap)."""


class SchemaError(SimilnetError):
    """An event-log line violates the JSONL schema.

    Carries the 1-based line number for CLI error reporting.
    """

    def __init__(self, message: str, line_number: int | None = None):
        super().__init__(message)
        self.line_number = line_number
