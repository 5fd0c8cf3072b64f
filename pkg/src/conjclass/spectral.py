"""Exact eigenvalue data and canonical forms for 1x1 / 2x2 matrices.

Every modulus comparison here is decided exactly.  Real eigenvalues live in
Q(sqrt(disc)); eigenvalues of Gaussian-rational 2x2 matrices either live in
Q(i)(sqrt(D)) for a rational D (then real and imaginary parts are
:class:`QuadraticNumber` values) or, when ``|disc|`` is irrational, only their
moduli are pinned down, through the quadratic whose roots are ``|lambda|**2``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .numeric import (COMPLEX, REAL, ExactMatrix, ExactVector, GaussianRational,
                      QuadraticNumber, gaussian_sqrt, kernel_basis, matrix_det,
                      matrix_inverse)


class ModulusClass(enum.Enum):
    ZERO = "Zero"
    IN_OPEN_UNIT = "InOpenUnit"
    UNIT = "UnitModulus"
    OUTSIDE_UNIT = "OutsideUnit"


@dataclass(frozen=True)
class EigenPair:
    """Trace, determinant and discriminant of a 1x1 or 2x2 matrix.

    For 1x1 matrices trace and det both equal the entry and disc is 0.
    """

    n: int
    trace: object
    det: object
    disc: object
    field: str = REAL


@dataclass(frozen=True)
class Eigenvalue:
    """One eigenvalue, ``re + i*im``.

    ``re``/``im`` are None when the eigenvalue is only known through its
    modulus class (Gaussian-rational 2x2 matrices whose discriminant has an
    irrational absolute value).
    """

    re: QuadraticNumber | None
    im: QuadraticNumber | None
    modulus: ModulusClass

    @property
    def is_exact(self) -> bool:
        return self.re is not None

    @property
    def is_real(self) -> bool:
        return self.im is not None and self.im == 0

    def sign(self) -> int:
        return self.re.sign()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __str__(self):
        if self.re is None:
            return f"<{self.modulus.value}>"
        if self.im == 0:
            return str(self.re)
        return f"{self.re} + ({self.im})i"


def _qn(x) -> QuadraticNumber:
    return x if isinstance(x, QuadraticNumber) else QuadraticNumber(x)


def _class_from_modsq(s) -> ModulusClass:
    s = _qn(s)
    if s == 0:
        return ModulusClass.ZERO
    if s < 1:
        return ModulusClass.IN_OPEN_UNIT
    if s == 1:
        return ModulusClass.UNIT
    return ModulusClass.OUTSIDE_UNIT


def _make_eigen(re, im) -> Eigenvalue:
    re, im = _qn(re), _qn(im)
    return Eigenvalue(re, im, _class_from_modsq(re * re + im * im))


def char_pair(A: ExactMatrix) -> EigenPair:
    if A.n == 1:
        a = A[0, 0]
        return EigenPair(1, a, a, a - a, A.field)
    if A.n != 2:
        raise ValueError("char_pair needs a 1x1 or 2x2 matrix")
    t = A.trace()
    d = matrix_det(A)
    return EigenPair(2, t, d, t * t - 4 * d, A.field)


def eigenvalues_from_pair(p: EigenPair) -> tuple[Eigenvalue, ...]:
    """Exact eigenvalues, ordered ``(t + sqrt(disc))/2`` then ``(t - sqrt(disc))/2``."""
    if p.field == REAL:
        if p.n == 1:
            return (_make_eigen(p.trace, 0),)
        t, disc = Fraction(p.trace), Fraction(p.disc)
        if disc >= 0:
            r = QuadraticNumber.sqrt(disc)
            return (_make_eigen(r * Fraction(1, 2) + t / 2, 0),
                    _make_eigen(-r * Fraction(1, 2) + t / 2, 0))
        beta = QuadraticNumber.sqrt(-disc) * Fraction(1, 2)
        return (_make_eigen(t / 2, beta), _make_eigen(t / 2, -beta))

    t = GaussianRational.coerce(p.trace)
    if p.n == 1:
        return (_make_eigen(t.re, t.im),)
    d = GaussianRational.coerce(p.det)
    disc = GaussianRational.coerce(p.disc)
    root = gaussian_sqrt(disc)
    if root is not None:
        g, D = root
        half = Fraction(1, 2)
        out = []
        for s in (1, -1):
            re = QuadraticNumber(t.re * half, s * g.re * half, D)
            im = QuadraticNumber(t.im * half, s * g.im * half, D)
            out.append(_make_eigen(re, im))
        return tuple(out)
    # |disc| irrational: |l1|^2, |l2|^2 are the roots of x^2 - sigma x + pi with
    # sigma = (|t|^2 + |disc|)/2, pi = |d|^2.  Neither root can equal 1 here.
    sigma = (QuadraticNumber.sqrt(disc.norm()) + t.norm()) * Fraction(1, 2)
    pi = d.norm()
    q1 = 1 - sigma + pi
    if q1 < 0:
        classes = (ModulusClass.IN_OPEN_UNIT, ModulusClass.OUTSIDE_UNIT)
    elif q1 > 0 and sigma < 2:
        classes = (ModulusClass.IN_OPEN_UNIT, ModulusClass.IN_OPEN_UNIT)
    elif q1 > 0:
        classes = (ModulusClass.OUTSIDE_UNIT, ModulusClass.OUTSIDE_UNIT)
    else:  # pragma: no cover - excluded by the irrationality of sigma
        raise AssertionError("unit-modulus root with irrational |disc|")
    return tuple(Eigenvalue(None, None, c) for c in classes)


def modulus_classes(p: EigenPair, field: str | None = None) -> tuple[ModulusClass, ...]:
    """Modulus class of each eigenvalue (one entry per eigenvalue)."""
    if field is not None and field != p.field:
        p = EigenPair(p.n, p.trace, p.det, p.disc, field)
    return tuple(e.modulus for e in eigenvalues_from_pair(p))


def eigenvalues(A: ExactMatrix) -> tuple[Eigenvalue, ...]:
    return eigenvalues_from_pair(char_pair(A))


# -- canonical forms ----------------------------------------------------------

@dataclass(frozen=True)
class CanonicalFormResult:
    """Canonical form of a matrix together with the transform ``S``.

    ``transform @ A @ transform_inverse == form``.  ``blocks`` lists
    ``(size, eigenvalue)``; a real rotation-scaling block appears once with
    size 2 and its eigenvalue of positive imaginary part.  ``form`` and the
    transforms are None when the eigenvalues are not representable exactly.
    """

    form: ExactMatrix | None
    transform: ExactMatrix | None
    transform_inverse: ExactMatrix | None
    blocks: tuple = ()


def _scalar_of(e: Eigenvalue, field: str):
    if field == COMPLEX:
        if not (e.re.is_rational and e.im.is_rational):
            return None
        return GaussianRational(e.re.p, e.im.p)
    return e.re.p if e.re.is_rational else e.re


def _identity_result(A: ExactMatrix, blocks) -> CanonicalFormResult:
    E = ExactMatrix.identity(A.n, A.field)
    return CanonicalFormResult(A, E, E, tuple(blocks))


def _from_columns(cols, A: ExactMatrix, form: ExactMatrix, blocks) -> CanonicalFormResult:
    P = ExactMatrix.from_columns(cols, A.field)
    if P.is_identity():
        return _identity_result(A, blocks)
    return CanonicalFormResult(form, matrix_inverse(P), P, tuple(blocks))


def _triangular_or_diagonal(A: ExactMatrix, lambdas: tuple, leading=None) -> CanonicalFormResult:
    """Jordan form for a 2x2 matrix with eigenvalues in the entry field."""
    E = ExactMatrix.identity(2, A.field)
    l1, l2 = lambdas
    s1, s2 = _scalar_of(l1, A.field), _scalar_of(l2, A.field)
    if s1 == s2:
        if A.is_scalar():
            return _identity_result(A, [(1, l1), (1, l1)])
        N = A - E.scale(s1)
        p2 = ExactVector.unit(2, 0, A.field)
        if (N @ p2).is_zero():
            p2 = ExactVector.unit(2, 1, A.field)
        p1 = N @ p2
        zero = s1 - s1
        form = ExactMatrix(((s1, zero + 1), (zero, s1)), A.field)
        return _from_columns([p1, p2], A, form, [(2, l1)])
    if leading is not None and s2 == leading:
        (l1, s1), (l2, s2) = (l2, s2), (l1, s1)
    v1 = kernel_basis(A - E.scale(s1))[0]
    v2 = kernel_basis(A - E.scale(s2))[0]
    zero = s1 - s1
    form = ExactMatrix(((s1, zero), (zero, s2)), A.field)
    return _from_columns([v1, v2], A, form, [(1, l1), (1, l2)])


def real_canonical_form(A: ExactMatrix, leading=None) -> CanonicalFormResult:
    """Real canonical form of a real 1x1 or 2x2 matrix.

    Diagonal entries come out as ``(t + sqrt(disc))/2`` first unless
    ``leading`` names an eigenvalue to put in the top-left corner.  A complex
    pair gives ``[[a, -b], [b, a]]`` with ``b > 0``.
    """
    if A.field != REAL:
        raise ValueError("real_canonical_form needs a real matrix")
    lambdas = eigenvalues(A)
    if A.n == 1:
        return _identity_result(A, [(1, lambdas[0])])
    p = char_pair(A)
    if p.disc >= 0:
        return _triangular_or_diagonal(A, lambdas, leading)
    alpha = Fraction(p.trace) / 2
    beta = lambdas[0].im
    form = ExactMatrix(((QuadraticNumber(alpha), -beta), (beta, QuadraticNumber(alpha))), REAL)
    blocks = [(2, lambdas[0])]
    if all(A[i, j] == form[i, j] for i in range(2) for j in range(2)):
        return _identity_result(A, blocks)
    # A p1 = alpha p1 + beta p2, A p2 = -beta p1 + alpha p2; p1 + i p2 is an
    # eigenvector for alpha - i beta
    c = A[1, 0]
    p1 = ExactVector((QuadraticNumber(alpha - A[1, 1]), QuadraticNumber(c)), REAL)
    p2 = ExactVector((-beta, QuadraticNumber(0)), REAL)
    return _from_columns([p1, p2], A, form, blocks)


def jordan_form(A: ExactMatrix, leading=None) -> CanonicalFormResult:
    """Jordan form of a complex 1x1 or 2x2 matrix.

    When the eigenvalues are not Gaussian rationals only the block structure
    is returned (form and transforms are None).
    """
    if A.field != COMPLEX:
        raise ValueError("jordan_form needs a complex matrix")
    lambdas = eigenvalues(A)
    if A.n == 1:
        return _identity_result(A, [(1, lambdas[0])])
    if all(e.is_exact and _scalar_of(e, COMPLEX) is not None for e in lambdas):
        return _triangular_or_diagonal(A, lambdas, leading)
    # irrational eigenvalues are automatically distinct
    return CanonicalFormResult(None, None, None, tuple((1, e) for e in lambdas))


def realify(A: ExactMatrix) -> ExactMatrix:
    """Replace each complex entry ``u + iv`` by the block ``[[u, -v], [v, u]]``."""
    if A.field != COMPLEX:
        raise ValueError("realify needs a complex matrix")
    n = A.n
    rows = []
    for i in range(n):
        top, bottom = [], []
        for j in range(n):
            z = A[i, j]
            top += [z.re, -z.im]
            bottom += [z.im, z.re]
        rows += [tuple(top), tuple(bottom)]
    return ExactMatrix(tuple(rows), REAL)


def realify_vector(v: ExactVector) -> ExactVector:
    out = []
    for z in v:
        out += [z.re, z.im]
    return ExactVector(tuple(out), REAL)


# -- block signature ----------------------------------------------------------

_KIND_ORDER = {"One": 0, "MinusOne": 1, "Jordan2One": 2, "Jordan2MinusOne": 3,
               "Rotation": 4, "Eigen": 5}


@dataclass(frozen=True)
class UnitBlock:
    """A Jordan block whose eigenvalue has modulus one.

    Real blocks are tagged by ``kind`` (``One``, ``MinusOne``, ``Jordan2One``,
    ``Jordan2MinusOne``, ``Rotation`` with ``re`` the cosine).  Complex blocks
    use kind ``Eigen`` and store the eigenvalue with non-negative imaginary
    part; since ``|lambda| = 1`` that choice identifies lambda up to
    conjugation.
    """

    kind: str
    size: int
    re: QuadraticNumber | None = None
    im: QuadraticNumber | None = None

    @property
    def sort_key(self):
        zero = QuadraticNumber(0)
        return (self.size, _KIND_ORDER[self.kind],
                self.re if self.re is not None else zero,
                self.im if self.im is not None else zero)

    def __str__(self):
        if self.kind == "Rotation":
            return f"Rotation(cos={self.re})"
        if self.kind == "Eigen":
            return f"J{self.size}({self.re} + ({self.im})i)"
        return self.kind


def real_unit_block(size: int, e: Eigenvalue) -> UnitBlock:
    if e.im != 0:
        return UnitBlock("Rotation", 2, e.re)
    if e.re == 1:
        return UnitBlock("One" if size == 1 else "Jordan2One", size)
    return UnitBlock("MinusOne" if size == 1 else "Jordan2MinusOne", size)


def complex_unit_block(size: int, e: Eigenvalue) -> UnitBlock:
    return UnitBlock("Eigen", size, e.re, abs(e.im))


@dataclass(frozen=True)
class BlockSignature:
    """Conjugacy data of a linear part: the contracting (plus), expanding
    (minus), nilpotent and unit-modulus pieces of its canonical form."""

    rank_plus: int = 0
    det_sign_plus: int | None = None
    rank_minus: int = 0
    det_sign_minus: int | None = None
    nilpotent_blocks: tuple = ()
    unit_blocks: tuple = dc_field(default=())

    @property
    def size(self) -> int:
        return (self.rank_plus + self.rank_minus + sum(self.nilpotent_blocks)
                + sum(u.size for u in self.unit_blocks))


def _structure(A: ExactMatrix) -> tuple:
    """``(size, eigenvalue)`` Jordan blocks of A, rotation pairs merged."""
    lambdas = eigenvalues(A)
    if A.n == 1:
        return ((1, lambdas[0]),)
    p = char_pair(A)
    if A.field == REAL and p.disc < 0:
        return ((2, lambdas[0]),)
    if p.disc == 0:
        if A.is_scalar():
            return ((1, lambdas[0]), (1, lambdas[1]))
        return ((2, lambdas[0]),)
    return ((1, lambdas[0]), (1, lambdas[1]))


def block_decompose(A: ExactMatrix) -> BlockSignature:
    """Split A into its plus / minus / nilpotent / unit parts.

    Real matrices record ``sign(det)`` of the plus and minus parts; complex
    ones do not (the realified parts always have positive determinant).
    """
    real = A.field == REAL
    rank = {ModulusClass.IN_OPEN_UNIT: 0, ModulusClass.OUTSIDE_UNIT: 0}
    dsign = {ModulusClass.IN_OPEN_UNIT: 1, ModulusClass.OUTSIDE_UNIT: 1}
    nilpotent, unit = [], []
    for size, e in _structure(A):
        m = e.modulus
        if m is ModulusClass.ZERO:
            nilpotent.append(size)
        elif m is ModulusClass.UNIT:
            unit.append(real_unit_block(size, e) if real else complex_unit_block(size, e))
        else:
            rank[m] += size
            if real and e.im == 0:
                dsign[m] *= e.sign() ** size
    rp, rm = rank[ModulusClass.IN_OPEN_UNIT], rank[ModulusClass.OUTSIDE_UNIT]
    return BlockSignature(
        rank_plus=rp,
        det_sign_plus=dsign[ModulusClass.IN_OPEN_UNIT] if real and rp else None,
        rank_minus=rm,
        det_sign_minus=dsign[ModulusClass.OUTSIDE_UNIT] if real and rm else None,
        nilpotent_blocks=tuple(sorted(nilpotent)),
        unit_blocks=tuple(sorted(unit, key=lambda u: u.sort_key)),
    )


def star_equal(u, v) -> bool:
    """Equality of unit-modulus Jordan data up to conjugating each block."""
    def canon(blocks):
        out = []
        for b in blocks:
            if b.kind == "Eigen" and b.im is not None and b.im < 0:
                b = UnitBlock(b.kind, b.size, b.re, -b.im)
            out.append(b)
        return sorted(out, key=lambda b: b.sort_key)
    return canon(u) == canon(v)


def unit_blocks_of(A: ExactMatrix) -> tuple:
    return block_decompose(A).unit_blocks


__all__ = [
    "BlockSignature", "CanonicalFormResult", "EigenPair", "Eigenvalue", "ModulusClass",
    "UnitBlock", "block_decompose", "char_pair", "eigenvalues", "eigenvalues_from_pair",
    "jordan_form", "modulus_classes", "real_canonical_form", "realify", "realify_vector",
    "star_equal",
]
