"""Exception types shared across the package.

Every error carries a short machine-readable ``code`` so the CLI can emit
structured error objects without string matching.
"""


class ModelError(ValueError):
    """Base class for all validation and precondition failures."""

    code = "model-error"


class RationalFormatError(ModelError):
    code = "bad-rational"


class IntervalError(ModelError):
    """Interval endpoint outside [0,1], or lo > hi."""

    code = "invalid-interval"


class SplitError(ModelError):
    """Requested prefix measure is negative or exceeds the set's measure."""

    code = "invalid-split"


class DensityError(ModelError):
    """Malformed step density (breakpoints not 0..1 strictly increasing)."""

    code = "invalid-density"


class SimpleFunctionError(ModelError):
    """Pieces of a simple function fail to partition the space."""

    code = "invalid-simple-function"


class PartitionError(ModelError):
    """Base for atom-list validation failures; carries offending indices."""

    code = "invalid-partition"

    def __init__(self, message, indices=()):
        super().__init__(message)
        self.indices = tuple(indices)


class EmptyAtomError(PartitionError):
    code = "empty-atom"


class OverlapError(PartitionError):
    code = "overlap"


class GapError(PartitionError):
    code = "gap"


class ProfileError(ModelError):
    """Atom-measure profile is empty, non-positive, or does not sum to 1."""

    code = "invalid-profile"


class ZeroMeasureError(ModelError):
    """Operation requires a carrier of positive measure."""

    code = "zero-measure"


class AlphaOneError(ModelError):
    """Renyi order 1 is rejected; use the Shannon spec instead."""

    code = "renyi-alpha-one"


class SpecFormatError(ModelError):
    """Malformed entropy-spec description."""

    code = "bad-spec"


class NotIndependentError(ModelError):
    code = "not-independent"


class PairOverlapError(ModelError):
    """Swap pair must be disjoint for this operation."""

    code = "pair-not-disjoint"


class UnequalMeasuresError(ModelError):
    code = "unequal-measures"


class NotInFamilyError(ModelError):
    """No pair of distinct atoms contains the two swap sets."""

    code = "pair-not-in-family"


class PairTooLargeError(ModelError):
    """Swap sets exceed the room available at the requested block ratio."""

    code = "pair-too-large"


class RatioError(ModelError):
    """Block ratio must be positive."""

    code = "invalid-ratio"


class GridError(ModelError):
    """Grid size must be a power of two, at least 2."""

    code = "invalid-grid"


class GridAlignmentError(ModelError):
    """Set endpoints do not lie on the grid."""

    code = "grid-misaligned"


class InputFormatError(ModelError):
    """Malformed JSON input document."""

    code = "bad-input"
