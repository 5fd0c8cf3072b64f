"""Conjugating homeomorphisms as chains of closed-form primitive maps.

A :class:`Homeomorphism` is an ordered chain of ``(primitive, direction)``
pairs; ``chain[0]`` is outermost, so evaluation runs from the end of the
chain to the front.  Every primitive has an exact parameterisation (rational
strings on the wire) and a floating-point evaluator for points stored as
numpy arrays of shape ``(N, dim)``.

Synthesis routines build explicit chains for the conjugate pairs that admit
an elementary construction; everything else raises
:class:`~conjclass.exceptions.SynthesisUnsupported`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import mpmath
import numpy as np
from scipy.stats import qmc

from .classify import AffineMap, conjugate, fixed_point_set, signature
from .exceptions import (DimensionMismatch, FieldOrDimensionMismatch, NegativeAlphaUnsupported,
                         NoFixedPoint, NotConjugate, NotFixedPointFree, NotSingular, ParseError,
                         Singular, SynthesisUnsupported, ZeroTranslation)
from .numeric import (COMPLEX, REAL, ExactMatrix, ExactVector, GaussianRational,
                      format_rational, matrix_det, matrix_from_json, matrix_inverse,
                      matrix_to_json, parse_rational,
                      vector_from_json, vector_to_json)
from .spectral import real_canonical_form

FORWARD = "forward"
INVERSE = "inverse"
EXPONENT_DIGITS = 50


def _to_float(x, field: str):
    if field == COMPLEX:
        return complex(GaussianRational.coerce(x))
    return float(x)


def _float_matrix(M: ExactMatrix) -> np.ndarray:
    dtype = complex if M.field == COMPLEX else float
    return np.array([[_to_float(x, M.field) for x in r] for r in M.rows], dtype=dtype)


def _float_vector(v: ExactVector) -> np.ndarray:
    dtype = complex if v.field == COMPLEX else float
    return np.array([_to_float(x, v.field) for x in v], dtype=dtype)


# -- primitives ----------------------------------------------------------------

class PrimitiveMap:
    """Base class; subclasses are frozen dataclasses."""

    kind = ""
    rational = True

    def forward(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def inverse(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def exact_affine(self, direction: str = FORWARD) -> AffineMap | None:
        return None

    def params_json(self) -> dict:
        return {}

    def to_json(self) -> dict:
        return {"type": self.kind, **self.params_json()}


@dataclass(frozen=True)
class Linear(PrimitiveMap):
    B: ExactMatrix
    kind = "Linear"

    def __post_init__(self):
        if matrix_det(self.B) == 0:
            raise ValueError("Linear primitive needs an invertible matrix")

    @cached_property
    def _fwd(self):
        return _float_matrix(self.B)

    @cached_property
    def _inv(self):
        return _float_matrix(matrix_inverse(self.B))

    def forward(self, X):
        return X @ self._fwd.T

    def inverse(self, X):
        return X @ self._inv.T

    def exact_affine(self, direction=FORWARD):
        f = AffineMap(self.B, ExactVector.zeros(self.B.n, self.B.field))
        return f if direction == FORWARD else f.inverse()

    def params_json(self):
        return {"B": matrix_to_json(self.B)}


@dataclass(frozen=True)
class Translate(PrimitiveMap):
    v: ExactVector
    kind = "Translate"

    @cached_property
    def _shift(self):
        return _float_vector(self.v)

    def forward(self, X):
        return X + self._shift

    def inverse(self, X):
        return X - self._shift

    def exact_affine(self, direction=FORWARD):
        f = AffineMap(ExactMatrix.identity(len(self.v), self.v.field), self.v)
        return f if direction == FORWARD else f.inverse()

    def params_json(self):
        return {"v": vector_to_json(self.v)}


def power_exponent(abs_a: Fraction, abs_c: Fraction) -> str:
    """``ln|c| / ln|a|`` as a decimal string with 50 significant digits."""
    with mpmath.workdps(EXPONENT_DIGITS + 10):
        ratio = (mpmath.log(mpmath.mpf(abs_c.numerator) / abs_c.denominator)
                 / mpmath.log(mpmath.mpf(abs_a.numerator) / abs_a.denominator))
        text = mpmath.nstr(ratio, EXPONENT_DIGITS, strip_zeros=True)
    return text[:-2] if text.endswith(".0") else text


@dataclass(frozen=True)
class SignedPower1D(PrimitiveMap):
    """``x -> sgn(x - center_in) |x - center_in|^exponent + center_out`` on the real line."""

    center_in: Fraction
    center_out: Fraction
    exponent: str
    abs_a: Fraction | None = None
    abs_c: Fraction | None = None
    kind = "SignedPower1D"

    def __post_init__(self):
        if not float(self.exponent) > 0:
            raise ValueError("exponent must be positive")

    @property
    def rational(self):
        return self.exponent == "1"

    @cached_property
    def _l(self):
        return float(self.exponent)

    def _power(self, X, centre_in, centre_out, l):
        d = X - centre_in
        return np.sign(d) * np.abs(d) ** l + centre_out

    def forward(self, X):
        return self._power(X, float(self.center_in), float(self.center_out), self._l)

    def inverse(self, X):
        return self._power(X, float(self.center_out), float(self.center_in), 1 / self._l)

    def exact_affine(self, direction=FORWARD):
        if not self.rational:
            return None
        f = AffineMap.translation([self.center_out - self.center_in], REAL)
        return f if direction == FORWARD else f.inverse()

    def params_json(self):
        out = {"center_in": format_rational(self.center_in),
               "center_out": format_rational(self.center_out),
               "exponent": self.exponent}
        if self.abs_a is not None:
            out["abs_a"] = format_rational(self.abs_a)
            out["abs_c"] = format_rational(self.abs_c)
        return out


@dataclass(frozen=True)
class ParabolicShear(PrimitiveMap):
    """``(x1, x2) -> (x1 - (x2 - 1/2)^2 / 2, x2)``."""

    kind = "ParabolicShear"

    def forward(self, X):
        Y = X.copy()
        Y[:, 0] -= 0.5 * (X[:, 1] - 0.5) ** 2
        return Y

    def inverse(self, X):
        Y = X.copy()
        Y[:, 0] += 0.5 * (X[:, 1] - 0.5) ** 2
        return Y


@dataclass(frozen=True)
class ExpFiberScale(PrimitiveMap):
    """``(x1, x2) -> (x1, x2 * alpha^(-x1))``."""

    alpha: Fraction
    kind = "ExpFiberScale"
    rational = False

    def __post_init__(self):
        if self.alpha <= 0 or self.alpha == 1:
            raise ValueError("alpha must be positive and different from 1")

    def _scale(self, X, sgn):
        Y = X.copy()
        Y[:, 1] = X[:, 1] * np.power(float(self.alpha), sgn * X[:, 0])
        return Y

    def forward(self, X):
        return self._scale(X, -1.0)

    def inverse(self, X):
        return self._scale(X, 1.0)

    def params_json(self):
        return {"alpha": format_rational(self.alpha)}


@dataclass(frozen=True)
class Conjugate(PrimitiveMap):
    """Coordinatewise complex conjugation; ``(x1, x2) -> (x1, -x2)`` on the real plane."""

    kind = "Conjugate"

    def forward(self, X):
        if np.iscomplexobj(X):
            return np.conj(X)
        if X.shape[1] != 2:
            raise DimensionMismatch("real Conjugate acts on the plane only")
        Y = X.copy()
        Y[:, 1] = -X[:, 1]
        return Y

    inverse = forward


def primitive_from_json(obj: dict, field: str) -> PrimitiveMap:
    try:
        kind = obj["type"]
        if kind == "Linear":
            return Linear(matrix_from_json(obj["B"], field))
        if kind == "Translate":
            return Translate(vector_from_json(obj["v"], field))
        if kind == "SignedPower1D":
            extra = {}
            if "abs_a" in obj:
                extra = {"abs_a": parse_rational(obj["abs_a"]), "abs_c": parse_rational(obj["abs_c"])}
            return SignedPower1D(parse_rational(obj["center_in"]), parse_rational(obj["center_out"]),
                                 str(obj["exponent"]), **extra)
        if kind == "ParabolicShear":
            return ParabolicShear()
        if kind == "ExpFiberScale":
            return ExpFiberScale(parse_rational(obj["alpha"]))
        if kind == "Conjugate":
            return Conjugate()
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad primitive {obj!r}: {exc}") from exc
    raise ParseError(f"unknown primitive type {obj.get('type')!r}")


# -- chains ----------------------------------------------------------------------

def _flip(direction: str) -> str:
    return INVERSE if direction == FORWARD else FORWARD


@dataclass(frozen=True)
class Homeomorphism:
    chain: tuple
    field: str
    dim: int

    def __post_init__(self):
        for _, d in self.chain:
            if d not in (FORWARD, INVERSE):
                raise ValueError(f"bad direction {d!r}")

    @classmethod
    def of(cls, steps, field: str, dim: int) -> Homeomorphism:
        """Build from primitives (forward) or ``(primitive, direction)`` pairs, outermost first."""
        chain = tuple(s if isinstance(s, tuple) else (s, FORWARD) for s in steps)
        return cls(chain, field, dim)

    @classmethod
    def identity(cls, field: str, dim: int) -> Homeomorphism:
        return cls((), field, dim)

    @property
    def is_rational_only(self) -> bool:
        return all(p.rational for p, _ in self.chain)

    def inverse(self) -> Homeomorphism:
        return Homeomorphism(tuple((p, _flip(d)) for p, d in reversed(self.chain)),
                             self.field, self.dim)

    def compose(self, other: Homeomorphism) -> Homeomorphism:
        """``self o other``."""
        if (self.field, self.dim) != (other.field, other.dim):
            raise DimensionMismatch("cannot compose homeomorphisms of different spaces")
        return Homeomorphism(self.chain + other.chain, self.field, self.dim)

    def apply(self, X, direction: str = FORWARD) -> np.ndarray:
        """Evaluate on one point (shape ``(dim,)``) or a batch (shape ``(N, dim)``)."""
        dtype = complex if self.field == COMPLEX else float
        arr = np.asarray(X, dtype=dtype)
        single = arr.ndim == 1
        if single:
            arr = arr[None, :]
        if arr.ndim != 2 or arr.shape[1] != self.dim:
            raise DimensionMismatch(f"expected points of dimension {self.dim}, got shape {arr.shape}")
        steps = self.chain if direction == INVERSE else reversed(self.chain)
        with np.errstate(over="ignore", invalid="ignore"):
            for prim, d in steps:
                if direction == INVERSE:
                    d = _flip(d)
                arr = prim.forward(arr) if d == FORWARD else prim.inverse(arr)
        return arr[0] if single else arr

    __call__ = apply

    def exact_affine(self) -> AffineMap | None:
        """The chain as an exact affine map, or None when a nonlinear primitive occurs."""
        out = AffineMap.identity(self.dim, self.field)
        for prim, d in self.chain:
            piece = prim.exact_affine(d)
            if piece is None:
                return None
            out = out.compose(piece)
        return out

    def to_json(self) -> dict:
        return {"v": 1, "field": self.field, "dim": self.dim,
                "chain": [{**p.to_json(), "direction": d} for p, d in self.chain]}

    @classmethod
    def from_json(cls, obj: dict) -> Homeomorphism:
        try:
            field, dim, items = obj["field"], int(obj["dim"]), obj["chain"]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad homeomorphism document: {exc}") from exc
        if field not in (REAL, COMPLEX):
            raise ParseError(f"unknown field {field!r}")
        chain = []
        for item in items:
            if not isinstance(item, dict):
                raise ParseError("chain entries must be objects")
            chain.append((primitive_from_json(item, field), item.get("direction", FORWARD)))
        try:
            return cls(tuple(chain), field, dim)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc


def homeo_apply(h: Homeomorphism, x, direction: str = FORWARD) -> np.ndarray:
    return h.apply(x, direction)


# -- synthesis -------------------------------------------------------------------

def _linear(rows, field: str = REAL) -> Linear:
    return Linear(ExactMatrix.of(rows, field))


def _steps(*pairs):
    """Drop identity linear maps and zero translations."""
    out = []
    for p in pairs:
        prim = p[0] if isinstance(p, tuple) else p
        if isinstance(prim, Linear) and prim.B.is_identity():
            continue
        if isinstance(prim, Translate) and prim.v.is_zero():
            continue
        out.append(p if isinstance(p, tuple) else (p, FORWARD))
    return out


def reduce_to_linear(f: AffineMap) -> tuple[Homeomorphism, AffineMap]:
    """Translate a fixed point to the origin: ``f = h o (x -> Ax) o h^-1`` with ``h = Translate{q}``.

    On a coset of fixed points the base point has every free coordinate set to zero.
    """
    fixed = fixed_point_set(f)
    if fixed.is_empty:
        raise NoFixedPoint("map has no fixed point")
    q = fixed.point
    h = Homeomorphism.of([Translate(q)], f.field, f.dim)
    return h, AffineMap(f.A, ExactVector.zeros(f.dim, f.field))


def synth_1d(f: AffineMap, g: AffineMap) -> Homeomorphism:
    if (f.field, f.dim, g.field, g.dim) != (REAL, 1, REAL, 1):
        raise FieldOrDimensionMismatch("synth_1d needs two maps of the real line")
    if not conjugate(f, g).conjugate:
        raise NotConjugate("maps are not conjugate")
    a, b = f.A[0, 0], f.b[0]
    c, d = g.A[0, 0], g.b[0]
    if a == 1:
        if b == 0:
            return Homeomorphism.identity(REAL, 1)
        return Homeomorphism.of([_linear([[d / b]])], REAL, 1)
    if a == c or a in (0, -1):
        exponent = "1"
    else:
        exponent = power_exponent(abs(a), abs(c))
    prim = SignedPower1D(b / (1 - a), d / (1 - c), exponent, abs(a), abs(c))
    return Homeomorphism.of([prim], REAL, 1)


def _det2(u: ExactVector, v: ExactVector):
    return u[0] * v[1] - u[1] * v[0]


def _complete(v: ExactVector) -> ExactVector:
    if v.field == REAL:
        return ExactVector.of([-v[1], v[0]], REAL)
    for k in range(2):
        e = ExactVector.unit(2, k, COMPLEX)
        if _det2(v, e) != 0:
            return e
    raise ZeroTranslation("zero vector")


def translation_matrix(b: ExactVector, d: ExactVector) -> ExactMatrix:
    """An invertible B with ``B b = d``."""
    field, n = b.field, len(b)
    if b.is_zero() or d.is_zero():
        raise ZeroTranslation("translation vectors must be nonzero")
    if n == 1:
        return ExactMatrix.of([[d[0] / b[0]]], field)
    k = next(i for i in range(n) if b[i] != 0)
    kappa = d[k] / b[k]
    if b.scale(kappa) == d:
        return ExactMatrix.identity(n, field).scale(kappa)
    src = ExactMatrix.from_columns([b, _complete(b)], field)
    dst = ExactMatrix.from_columns([d, _complete(d)], field)
    return dst @ matrix_inverse(src)


def synth_translation(f: AffineMap, g: AffineMap) -> Homeomorphism:
    if (f.field, f.dim) != (g.field, g.dim):
        raise FieldOrDimensionMismatch("maps live in different spaces")
    if not (f.is_translation() and g.is_translation()):
        raise SynthesisUnsupported("both maps must be translations")
    B = translation_matrix(f.b, g.b)
    return Homeomorphism.of(_steps(Linear(B)), f.field, f.dim)


def _require_fixed_point_free(f: AffineMap) -> None:
    if not fixed_point_set(f).is_empty:
        raise NotFixedPointFree("map has a fixed point")


def _bijective_to_translation(f: AffineMap) -> tuple[list, ExactVector]:
    """Chain (outermost first) conjugating a fixed-point free plane bijection to ``x + e``."""
    if f.is_translation():
        return [], f.b
    alpha = f.A.trace() - 1
    if alpha < 0:
        raise NegativeAlphaUnsupported(
            f"second eigenvalue {alpha} is negative; the fibre scaling alpha^(-x1) is undefined")
    if alpha == 1:
        rcf = real_canonical_form(f.A)
        S = rcf.transform
        delta = S @ f.b
        d1, d2 = delta[0], delta[1]
        M = ExactMatrix.of([[1 / d2, -d1 / d2 ** 2], [0, 1 / d2]], REAL)
        return _steps(ParabolicShear(), Linear(M), Linear(S)), ExactVector.unit(2, 1, REAL)
    rcf = real_canonical_form(f.A, leading=1)
    S = rcf.transform
    delta = S @ f.b
    d1, d2 = delta[0], delta[1]
    shift = Translate(ExactVector.of([0, d2 / (alpha - 1)], REAL))
    scale = _linear([[1 / d1, 0], [0, 1]])
    return (_steps(ExpFiberScale(alpha), shift, scale, Linear(S)),
            ExactVector.unit(2, 0, REAL))


def synth_nofix_bijective_2d(f: AffineMap, g: AffineMap) -> Homeomorphism:
    """Conjugate a fixed-point free bijection of the plane to g.

    Both maps are first taken to a translation: a unipotent linear part goes
    through a parabolic shear, a second eigenvalue alpha > 0 through an
    exponential fibre scaling.  The two translations are then matched linearly.
    """
    for m in (f, g):
        if (m.field, m.dim) != (REAL, 2):
            raise FieldOrDimensionMismatch("needs maps of the real plane")
        _require_fixed_point_free(m)
        if m.det() == 0:
            raise Singular("linear part is singular")
    chain_f, e_f = _bijective_to_translation(f)
    chain_g, e_g = _bijective_to_translation(g)
    psi = _steps(Linear(translation_matrix(e_f, e_g)))
    hf = Homeomorphism.of(chain_f, REAL, 2)
    hg = Homeomorphism.of(chain_g, REAL, 2)
    return hg.inverse().compose(Homeomorphism.of(psi, REAL, 2)).compose(hf)


def synth_nofix_singular_2d(f: AffineMap, g: AffineMap) -> Homeomorphism:
    for m in (f, g):
        if (m.field, m.dim) != (REAL, 2):
            raise FieldOrDimensionMismatch("needs maps of the real plane")
        _require_fixed_point_free(m)
        if m.det() != 0:
            raise NotSingular("linear part is invertible")
    S_f = real_canonical_form(f.A, leading=1).transform
    S_g = real_canonical_form(g.A, leading=1).transform
    delta, eta = S_f @ f.b, S_g @ g.b
    scale = _linear([[eta[0] / delta[0], 0], [0, 1]])
    shift = Translate(ExactVector.of([0, eta[1] - delta[1]], REAL))
    chain = _steps((Linear(S_g), INVERSE), shift, scale, Linear(S_f))
    return Homeomorphism.of(chain, REAL, 2)


def synth_fixed_reduction(f: AffineMap, g: AffineMap) -> Homeomorphism:
    """Maps with fixed points whose linear parts agree, or are complex conjugates."""
    hf, lf = reduce_to_linear(f)
    hg, lg = reduce_to_linear(g)
    if lf.A == lg.A:
        middle = []
    elif f.field == COMPLEX and lf.A.conjugate() == lg.A:
        middle = [Conjugate()]
    else:
        raise SynthesisUnsupported("no explicit homeomorphism between these linear parts")
    return hg.compose(Homeomorphism.of(middle, f.field, f.dim)).compose(hf.inverse())


def synthesize(f: AffineMap, g: AffineMap) -> Homeomorphism:
    """Explicit h with ``g = h o f o h^-1``, when an elementary construction exists."""
    verdict = conjugate(f, g)
    if not verdict.conjugate:
        raise NotConjugate(f"maps differ in {verdict.distinguishing_invariant}")
    if f.field == REAL and f.dim == 1:
        return synth_1d(f, g)
    sf = signature(f)
    if sf.has_fixed_point:
        return synth_fixed_reduction(f, g)
    if f.is_translation() and g.is_translation():
        return synth_translation(f, g)
    if f.field == REAL and f.dim == 2:
        if sf.singular:
            return synth_nofix_singular_2d(f, g)
        return synth_nofix_bijective_2d(f, g)
    raise SynthesisUnsupported("no explicit construction for this class")


# -- verification ----------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    samples: int
    range: tuple
    max_residual: float
    max_roundtrip: float
    passed: bool
    tolerance: float

    def to_json(self) -> dict:
        return {"v": 1, "samples": self.samples, "range": list(self.range),
                "max_residual": self.max_residual, "max_roundtrip": self.max_roundtrip,
                "pass": self.passed, "tolerance": self.tolerance}


# fractional parts of sqrt(2), sqrt(3), ... keep samples off rational loci
_SHIFT = np.array([math.sqrt(p) % 1 for p in (2, 3, 5, 7)])


@lru_cache(maxsize=16)
def _unit_sample(real_dim: int, samples: int) -> np.ndarray:
    u = qmc.Halton(d=real_dim, scramble=False).random(samples)
    u = (u + _SHIFT[:real_dim]) % 1.0
    u.setflags(write=False)
    return u


def sample_points(field: str, dim: int, samples: int, box=(-10.0, 10.0)) -> np.ndarray:
    """Deterministic shifted Halton points in ``box`` along every real coordinate."""
    real_dim = dim * (2 if field == COMPLEX else 1)
    u = _unit_sample(real_dim, samples)
    lo, hi = float(box[0]), float(box[1])
    pts = lo + (hi - lo) * u
    if field == COMPLEX:
        return pts[:, :dim] + 1j * pts[:, dim:]
    return pts


def _evaluate_affine(f: AffineMap, X: np.ndarray) -> np.ndarray:
    return X @ _float_matrix(f.A).T + _float_vector(f.b)


def _max_finite(values: np.ndarray) -> float:
    values = np.where(np.isnan(values), np.inf, values)
    return float(values.max()) if values.size else 0.0


def verify_conjugacy(f: AffineMap, g: AffineMap, h: Homeomorphism, samples: int = 10_000,
                     box=(-10.0, 10.0), tolerance: float = 1e-9) -> VerificationReport:
    """Check ``h o f = g o h`` on a deterministic sample; also check ``h o h^-1 = id``."""
    if (f.field, f.dim) != (g.field, g.dim) or (f.field, f.dim) != (h.field, h.dim):
        raise FieldOrDimensionMismatch("maps and homeomorphism live in different spaces")
    X = sample_points(f.field, f.dim, samples, box)
    with np.errstate(over="ignore", invalid="ignore"):
        lhs = h.apply(_evaluate_affine(f, X))
        rhs = _evaluate_affine(g, h.apply(X))
        residual = np.linalg.norm(lhs - rhs, axis=1) / (1 + np.linalg.norm(rhs, axis=1))
        roundtrip = np.linalg.norm(h.apply(h.apply(X, INVERSE)) - X, axis=1)
    max_res, max_rt = _max_finite(residual), _max_finite(roundtrip)
    return VerificationReport(samples, (float(box[0]), float(box[1])), max_res, max_rt,
                              max_res <= tolerance and max_rt <= tolerance, tolerance)


__all__ = [
    "FORWARD", "INVERSE", "PrimitiveMap", "Linear", "Translate", "SignedPower1D",
    "ParabolicShear", "ExpFiberScale", "Conjugate", "Homeomorphism", "VerificationReport",
    "homeo_apply", "primitive_from_json", "reduce_to_linear", "synth_1d", "synth_translation",
    "synth_nofix_bijective_2d", "synth_nofix_singular_2d", "synth_fixed_reduction",
    "synthesize", "translation_matrix", "verify_conjugacy", "sample_points", "power_exponent",
]
