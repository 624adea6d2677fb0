"""Typed errors shared across the package.

Most derive from ValueError so callers that only care about "bad input"
can catch broadly; the distinct classes exist because the contracts of
the individual operations name them.
"""


class AllZeroError(ValueError):
    """Importance normalization received a vector with no positive mass."""


class SpecInvalidError(ValueError):
    """A dataset/split/resample spec violates its invariants."""


class TaskMismatchError(ValueError):
    """Ranker or validator applied to a task it does not support."""


class SingleClassError(ValueError):
    """Classification input contains fewer than two classes."""


class NegativeFeatureError(ValueError):
    """A ranker that requires nonnegative features saw a negative cell."""


class DegenerateDataError(ValueError):
    """Training data carries no usable signal (e.g. all rows identical)."""


class SingularMatrixError(ValueError):
    """Unregularized normal equations on a rank-deficient design."""


class EmptyTrainError(ValueError):
    """Validator fit with an empty training set."""


class DimensionMismatchError(ValueError):
    """Train/test column counts differ."""


class LengthMismatchError(ValueError):
    """Paired vectors have different lengths."""


class DegenerateTruthError(ValueError):
    """Ground-truth importances are uniform, so the R2 denominator is zero."""


class InsufficientSamplesError(ValueError):
    """A variance estimate needs at least two values."""


class InsufficientBootstrapsError(InsufficientSamplesError):
    """Stability estimation needs at least two bootstraps."""


class DegenerateSelectionError(ValueError):
    """Subset-stability undefined: mean subset size is 0 or p."""


class NonPositiveMaxError(ValueError):
    """Relative performance undefined when the best score is not positive."""


class AllZeroDifferencesError(ValueError):
    """Wilcoxon test with every paired difference equal to zero."""


class DegenerateTableError(ValueError):
    """Score table too small to test (fewer than 2 rows or 2 columns)."""


class UnsupportedKError(ValueError):
    """No critical value tabulated for this number of methods."""


class SizeExceedsDatasetError(ValueError):
    """Sweep sample size larger than the available training partition."""


class IndexOutOfRangeError(IndexError):
    """Sparse support index not within [0, p)."""


class ParseError(ValueError):
    """CSV cell could not be parsed; carries (row, col) context."""

    def __init__(self, message, row=None, col=None):
        super().__init__(message)
        self.row = row
        self.col = col


class NonNumericFeatureError(ParseError):
    """Feature column contains a non-numeric or missing value."""


class MissingTargetColumnError(ValueError):
    """The configured target column does not exist in the file."""


class PathTraversalError(ValueError):
    """Storage key attempted to escape the provider root."""


class InvalidTransitionError(RuntimeError):
    """Queue job completion attempted from a state that does not allow it."""


class CacheCorruptError(RuntimeError):
    """Stored artifact failed envelope validation."""


class EmptyGridError(ValueError):
    """Report requested over zero aggregates."""


class ConfigError(ValueError):
    """Run configuration file is invalid; message carries context."""
