"""Topological conjugacy of affine maps over R and C in dimensions 1 and 2.

Two affine maps with fixed points are conjugate exactly when their linear
parts are, which is decided by comparing block signatures.  Fixed-point free
maps of the line are all conjugate (translations); fixed-point free maps of
the plane split by whether the linear part is singular.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exceptions import FieldOrDimensionMismatch, UnsupportedDimension
from .numeric import (COMPLEX, REAL, ExactMatrix, ExactVector, GaussianRational,
                      SolutionSet, matrix_det, matrix_inverse, solve_affine_system,
                      solve_linear)
from .spectral import (BlockSignature, ModulusClass, UnitBlock, block_decompose,
                       eigenvalues, star_equal)

ORIENTATION_MISMATCH = "ORIENTATION_MISMATCH"

BASIS_LINEAR_PART = "linear-part-signature"
BASIS_FIXED_POINT_COUNT = "fixed-point-count"
BASIS_FIXED_POINT_FREE = "fixed-point-free-class"


@dataclass(frozen=True)
class AffineMap:
    """``x -> A x + b`` with exact entries."""

    A: ExactMatrix
    b: ExactVector

    def __post_init__(self):
        if self.A.field != self.b.field:
            raise ValueError("matrix and vector fields differ")
        if self.A.shape != (len(self.b), len(self.b)):
            raise ValueError("matrix and vector dimensions differ")

    @classmethod
    def of(cls, A, b, field: str = REAL) -> AffineMap:
        return cls(ExactMatrix.of(A, field), ExactVector.of(b, field))

    @classmethod
    def linear(cls, A, field: str = REAL) -> AffineMap:
        M = ExactMatrix.of(A, field)
        return cls(M, ExactVector.zeros(M.n, field))

    @classmethod
    def translation(cls, b, field: str = REAL) -> AffineMap:
        v = ExactVector.of(b, field)
        return cls(ExactMatrix.identity(len(v), field), v)

    @classmethod
    def identity(cls, dim: int, field: str = REAL) -> AffineMap:
        return cls(ExactMatrix.identity(dim, field), ExactVector.zeros(dim, field))

    @property
    def field(self) -> str:
        return self.A.field

    @property
    def dim(self) -> int:
        return self.A.n

    def __call__(self, x) -> ExactVector:
        if not isinstance(x, ExactVector):
            x = ExactVector.of(x, self.field)
        return self.A @ x + self.b

    def compose(self, other: AffineMap) -> AffineMap:
        """``self o other``."""
        return AffineMap(self.A @ other.A, self.A @ other.b + self.b)

    def inverse(self) -> AffineMap:
        Ainv = matrix_inverse(self.A)
        return AffineMap(Ainv, -(Ainv @ self.b))

    def conjugated_by(self, T: AffineMap) -> AffineMap:
        """``T o self o T^-1``."""
        return T.compose(self).compose(T.inverse())

    def is_translation(self) -> bool:
        return self.A.is_identity()

    def det(self):
        return matrix_det(self.A)

    def __str__(self):
        return f"x -> {self.A} x + {self.b}"


def check_supported(f: AffineMap) -> None:
    if f.field not in (REAL, COMPLEX):
        raise ValueError(f"unknown field {f.field!r}")
    if f.dim not in (1, 2):
        raise UnsupportedDimension(f"dimension {f.dim} is not supported (only 1 and 2)")


FixedPointSet = SolutionSet


def fixed_point_set(f: AffineMap) -> FixedPointSet:
    return solve_affine_system(f.A, f.b)


@dataclass(frozen=True)
class ConjugacySignature:
    """Complete conjugacy invariant of an affine map.

    With a fixed point, ``blocks`` carries the block signature of the linear
    part.  Without one, only ``singular`` (``det A == 0``) matters.
    """

    field: str
    dim: int
    has_fixed_point: bool
    blocks: BlockSignature | None = None
    singular: bool | None = None
    identity: bool = False

    @property
    def kind(self) -> str:
        return "HasFixedPoint" if self.has_fixed_point else "NoFixedPoint"


def signature(f: AffineMap) -> ConjugacySignature:
    check_supported(f)
    if fixed_point_set(f).is_empty:
        return ConjugacySignature(f.field, f.dim, False, singular=f.det() == 0)
    return ConjugacySignature(f.field, f.dim, True, blocks=block_decompose(f.A),
                              identity=f.A.is_identity())


@dataclass(frozen=True)
class VerdictWarning:
    code: str
    message: str


@dataclass(frozen=True)
class Verdict:
    conjugate: bool
    basis: str
    distinguishing_invariant: str | None = None
    warnings: tuple = ()


def _block_difference(p: BlockSignature, q: BlockSignature, field: str) -> str | None:
    if p.rank_plus != q.rank_plus:
        return "rank of the contracting part"
    if p.rank_minus != q.rank_minus:
        return "rank of the expanding part"
    if field == REAL and p.det_sign_plus != q.det_sign_plus:
        return "determinant sign of the contracting part"
    if field == REAL and p.det_sign_minus != q.det_sign_minus:
        return "determinant sign of the expanding part"
    if p.nilpotent_blocks != q.nilpotent_blocks:
        return "nilpotent block structure"
    if field == COMPLEX:
        if not star_equal(p.unit_blocks, q.unit_blocks):
            return "unit-modulus Jordan blocks (up to conjugation)"
    elif p.unit_blocks != q.unit_blocks:
        return "unit-modulus canonical blocks"
    return None


def compare_signatures(s: ConjugacySignature, t: ConjugacySignature) -> Verdict:
    if (s.field, s.dim) != (t.field, t.dim):
        raise FieldOrDimensionMismatch(
            f"cannot compare {s.field}^{s.dim} with {t.field}^{t.dim}")
    if s.has_fixed_point != t.has_fixed_point:
        return Verdict(False, BASIS_FIXED_POINT_COUNT, "fixed-point count")
    if s.has_fixed_point:
        diff = _block_difference(s.blocks, t.blocks, s.field)
        return Verdict(diff is None, BASIS_LINEAR_PART, diff)
    if s.dim == 1 or s.singular == t.singular:
        return Verdict(True, BASIS_FIXED_POINT_FREE)
    return Verdict(False, BASIS_FIXED_POINT_FREE, "singularity of the linear part")


def conjugate(f: AffineMap, g: AffineMap) -> Verdict:
    """Decide whether f and g are topologically conjugate.

    Fixed-point free, nonsingular real plane maps are reported conjugate
    regardless of orientation; when the determinants have opposite signs an
    ORIENTATION_MISMATCH warning is attached, since an orientation-reversing
    map cannot be conjugate to an orientation-preserving one.
    """
    if (f.field, f.dim) != (g.field, g.dim):
        raise FieldOrDimensionMismatch(
            f"cannot compare {f.field}^{f.dim} with {g.field}^{g.dim}")
    v = compare_signatures(signature(f), signature(g))
    if v.conjugate and f.field == REAL and f.dim == 2 and v.basis == BASIS_FIXED_POINT_FREE:
        df, dg = f.det(), g.det()
        if df != 0 and (df > 0) != (dg > 0):
            w = VerdictWarning(
                ORIENTATION_MISMATCH,
                f"det of the linear parts have opposite signs ({df} vs {dg}); "
                "one map preserves orientation and the other reverses it")
            v = Verdict(v.conjugate, v.basis, v.distinguishing_invariant, (w,))
    return v


# -- canonical representatives -----------------------------------------------

def _block_diag(blocks: list[list[list]], field: str) -> ExactMatrix:
    n = sum(len(b) for b in blocks)
    rows = [[0] * n for _ in range(n)]
    k = 0
    for blk in blocks:
        m = len(blk)
        for i in range(m):
            for j in range(m):
                rows[k + i][k + j] = blk[i][j]
        k += m
    return ExactMatrix.of(rows, field)


def _graded_block(rank: int, dsign: int | None, value: Fraction) -> list[list[list]]:
    vals = [value] * rank
    if dsign == -1:
        vals[0] = -value
    return [[[v]] for v in vals]


def _jordan(size: int, lam) -> list[list]:
    return [[lam if i == j else (1 if j == i + 1 else 0) for j in range(size)]
            for i in range(size)]


def _complex_pair_companion(u: UnitBlock, v: UnitBlock) -> list[list]:
    # pick conjugations so that trace and det land back in Q(i)
    for s1 in (1, -1):
        for s2 in (1, -1):
            i1, i2 = u.im * s1, v.im * s2
            t_re, t_im = u.re + v.re, i1 + i2
            d_re = u.re * v.re - i1 * i2
            d_im = u.re * i2 + i1 * v.re
            if all(x.is_rational for x in (t_re, t_im, d_re, d_im)):
                t = GaussianRational(t_re.p, t_im.p)
                d = GaussianRational(d_re.p, d_im.p)
                return [[0, -d], [1, t]]
    raise ValueError("unit blocks are not realizable over Gaussian rationals")


def _unit_matrix_blocks(units: tuple, field: str) -> list[list[list]]:
    out = []
    if field == REAL:
        for u in units:
            if u.kind == "One":
                out.append([[1]])
            elif u.kind == "MinusOne":
                out.append([[-1]])
            elif u.kind == "Jordan2One":
                out.append(_jordan(2, 1))
            elif u.kind == "Jordan2MinusOne":
                out.append(_jordan(2, -1))
            else:
                # companion of x^2 - 2 cos x + 1: rational entries, same rotation
                out.append([[0, -1], [1, 2 * u.re.p]])
        return out
    pending = []
    for u in units:
        if u.re.is_rational and u.im.is_rational:
            out.append(_jordan(u.size, GaussianRational(u.re.p, u.im.p)))
        else:
            pending.append(u)
    if pending:
        out.append(_complex_pair_companion(*pending))
    return out


def canonical_representative(s: ConjugacySignature) -> AffineMap:
    """A fixed, simple map with the given signature."""
    n, field = s.dim, s.field
    if not s.has_fixed_point:
        if n == 1:
            return AffineMap.translation([1], field)
        if s.singular:
            return AffineMap.of([[1, 0], [0, 0]], [1, 0], field)
        return AffineMap.translation([0, 1], field)
    b = s.blocks
    blocks = []
    blocks += _graded_block(b.rank_plus, b.det_sign_plus, Fraction(1, 2))
    blocks += _graded_block(b.rank_minus, b.det_sign_minus, Fraction(2))
    blocks += [_jordan(k, 0) for k in b.nilpotent_blocks]
    blocks += _unit_matrix_blocks(b.unit_blocks, field)
    return AffineMap(_block_diag(blocks, field), ExactVector.zeros(n, field))


# -- independent topological witnesses -----------------------------------------

@dataclass(frozen=True)
class WitnessReport:
    """Elementary topological invariants, computed without the signature."""

    fixed_count_class: str
    bijective: bool
    orientation: int | None
    period2_class: str
    contracting: bool


def invariant_witnesses(f: AffineMap) -> WitnessReport:
    check_supported(f)
    fixed = fixed_point_set(f)
    count = {"empty": "zero", "point": "one"}.get(fixed.kind, "infinite")
    det = f.det()
    bijective = det != 0
    orientation = None
    if f.field == REAL and bijective:
        orientation = 1 if det > 0 else -1
    E = ExactMatrix.identity(f.dim, f.field)
    twice = solve_linear(f.A @ f.A - E, -(f.A @ f.b + f.b))
    extra = not twice.is_empty and (fixed.is_empty or twice.dimension > fixed.dimension)
    contracting = all(e.modulus in (ModulusClass.ZERO, ModulusClass.IN_OPEN_UNIT)
                      for e in eigenvalues(f.A))
    return WitnessReport(count, bijective, orientation, "some" if extra else "none", contracting)


__all__ = [
    "AffineMap", "ConjugacySignature", "Verdict", "VerdictWarning", "WitnessReport",
    "canonical_representative", "compare_signatures", "conjugate", "fixed_point_set",
    "invariant_witnesses", "signature", "FixedPointSet", "ORIENTATION_MISMATCH",
]
