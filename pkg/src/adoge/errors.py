"""Exception types raised across the package.

Every error below derives from :class:`AdogeError`, so callers can catch the
package's failures with a single except clause while still being able to
distinguish malformed input (construction/parsing) from numerical trouble.
"""


class AdogeError(Exception):
    """Base class for all errors raised by this package."""


# ---------------------------------------------------------------------------
# graph construction


class IndexOutOfRange(AdogeError):
    """An edge endpoint is outside [0, n)."""


class DuplicateEdge(AdogeError):
    """The same undirected node pair appears more than once."""


class NonPositiveWeight(AdogeError):
    """An edge weight is zero or negative."""


class UnknownCategoricalValue(AdogeError):
    """An attribute value does not belong to the column's shared domain."""


class DimensionMismatch(AdogeError):
    """Array shapes disagree with the graph or histogram they are used with."""


# ---------------------------------------------------------------------------
# dataset ingestion


class MissingRequiredFile(AdogeError):
    """A required dataset file is absent."""


class MalformedLine(AdogeError):
    """A dataset file line could not be parsed.

    Carries the offending path and 1-based line number.
    """

    def __init__(self, path, line_no, reason=""):
        self.path = str(path)
        self.line_no = int(line_no)
        self.reason = reason
        msg = f"{self.path}:{self.line_no}: malformed line"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class InconsistentNodeCount(AdogeError):
    """Per-node files disagree about how many nodes the dataset has."""


class CrossGraphEdge(AdogeError):
    """An edge connects nodes assigned to different graphs."""


class NegativeWeight(AdogeError):
    """An edge-list file declares a negative weight."""


# ---------------------------------------------------------------------------
# numerics


class ZeroStartVector(AdogeError):
    """The Lanczos start vector has zero norm."""


class EigensolverFailure(AdogeError):
    """The tridiagonal eigensolver did not converge within its sweep cap."""


class SizeCapExceeded(AdogeError):
    """A dense computation was requested for a graph above the size cap."""


# ---------------------------------------------------------------------------
# embedding assembly


class EmptyFeatureSet(AdogeError):
    """The requested configuration produces no feature columns."""


class NonFiniteFeature(AdogeError):
    """An embedding contains NaN or infinite entries."""
