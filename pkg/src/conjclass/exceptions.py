from __future__ import annotations


class ConjClassError(Exception):
    """Base class for every error raised by this package."""


class ZeroDenominator(ConjClassError, ZeroDivisionError):
    pass


class ParseError(ConjClassError, ValueError):
    pass


class UnsupportedDimension(ConjClassError, ValueError):
    pass


class FieldOrDimensionMismatch(ConjClassError, ValueError):
    pass


class DimensionMismatch(ConjClassError, ValueError):
    pass


class SynthesisError(ConjClassError):
    """No conjugating homeomorphism could be produced for the given pair."""


class NotConjugate(SynthesisError):
    pass


class SynthesisUnsupported(SynthesisError):
    """The pair is conjugate but no explicit construction is available."""


class NegativeAlphaUnsupported(SynthesisUnsupported):
    pass


class NoFixedPoint(SynthesisError):
    pass


class NotFixedPointFree(SynthesisError):
    pass


class Singular(SynthesisError):
    pass


class NotSingular(SynthesisError):
    pass


class ZeroTranslation(SynthesisError):
    pass
