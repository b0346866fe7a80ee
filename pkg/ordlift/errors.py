"""
Exception hierarchy for ordlift
"""


class OrdliftError(Exception):
    """Base class for all ordlift errors."""


class InputError(OrdliftError):
    """Malformed element, representation, word or config input."""


class KindMismatchError(OrdliftError):
    """Operation mixes piecewise-linear maps and Moebius lifts."""


class NotPositiveError(OrdliftError):
    """Element is required to be positive in the order but is not."""


class SearchDivergedError(OrdliftError):
    """No exponent was found below the configured power cap."""


class UnresolvedSignError(OrdliftError):
    """Interval refinement hit its depth cap without deciding a sign."""


class InconsistentOraclesError(OrdliftError):
    """Two independent decision procedures disagree."""


class InstanceInconsistentError(OrdliftError):
    """A causal-cover instance violates its declared constants."""


class NotInCommutatorError(OrdliftError):
    """Word is not in the commutator subgroup."""


class UnsupportedSurfaceError(OrdliftError):
    """No representation is configured for the requested surface."""


class DegenerateSampleError(OrdliftError):
    """Every sampled word has vanishing f_Sigma."""
