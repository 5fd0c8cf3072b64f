"""Exact classification of affine maps of R, R^2, C and C^2 up to topological conjugacy."""
from .classify import (AffineMap, ConjugacySignature, Verdict, VerdictWarning, WitnessReport,
                       canonical_representative, conjugate, fixed_point_set,
                       invariant_witnesses, signature)
from .exceptions import (ConjClassError, NegativeAlphaUnsupported, NotConjugate, ParseError,
                         SynthesisError, SynthesisUnsupported, UnsupportedDimension)
from .homeo import Homeomorphism, VerificationReport, synthesize, verify_conjugacy
from .numeric import COMPLEX, REAL, ExactMatrix, ExactVector, GaussianRational, QuadraticNumber

__all__ = [
    "AffineMap", "ConjugacySignature", "Verdict", "VerdictWarning", "WitnessReport",
    "canonical_representative", "conjugate", "fixed_point_set", "invariant_witnesses",
    "signature", "ConjClassError", "NegativeAlphaUnsupported", "NotConjugate", "ParseError",
    "SynthesisError", "SynthesisUnsupported", "UnsupportedDimension", "Homeomorphism",
    "VerificationReport", "synthesize", "verify_conjugacy", "COMPLEX", "REAL", "ExactMatrix",
    "ExactVector", "GaussianRational", "QuadraticNumber",
]
