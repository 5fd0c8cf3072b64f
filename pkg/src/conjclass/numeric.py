"""Exact scalars and small exact linear algebra.

Rationals are :class:`fractions.Fraction`.  On top of that we provide
Gaussian rationals (``Q(i)``), real quadratic numbers ``p + q*sqrt(D)`` and
immutable matrices / vectors over any of these, with the handful of
algorithms the classifier needs (determinant, rank, kernel, inverse,
characteristic polynomial, affine system solving).  Nothing here touches
floating point except the explicit ``__float__`` / ``__complex__`` hooks.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence, Union

from .exceptions import ParseError, ZeroDenominator

REAL = "R"
COMPLEX = "C"
FIELDS = (REAL, COMPLEX)

# trial-division bound used when extracting square factors
SQUAREFREE_BOUND = 10**6

_RATIONAL_RE = re.compile(r"^\s*-?\d+(\s*/\s*\d+)?\s*$")
_DECIMAL_RE = re.compile(r"^\s*-?(\d+\.\d*|\.\d+)\s*$")


def normalize_rational(num: int, den: int) -> Fraction:
    if den == 0:
        raise ZeroDenominator(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def parse_rational(text) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` or a plain decimal string such as ``"-0.25"``.

    JSON integers are accepted as well; binary floats are rejected so that no
    rounding can leak into a classification decision.
    """
    if isinstance(text, bool):
        raise ParseError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ParseError(f"not a rational string: {text!r}")
    if _RATIONAL_RE.match(text):
        parts = text.replace(" ", "").split("/")
        if len(parts) == 2:
            return normalize_rational(int(parts[0]), int(parts[1]))
        return Fraction(int(parts[0]))
    if _DECIMAL_RE.match(text):
        return Fraction(text.strip())
    raise ParseError(f"not a rational string: {text!r}")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def sign(x) -> int:
    if x > 0:
        return 1
    if x < 0:
        return -1
    return 0


def rational_sqrt(r: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    r = Fraction(r)
    if r < 0:
        return None
    n, d = r.numerator, r.denominator
    sn, sd = math.isqrt(n), math.isqrt(d)
    if sn * sn == n and sd * sd == d:
        return Fraction(sn, sd)
    return None


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write ``n = k**2 * m`` with ``k > 0`` and ``m`` squarefree (best effort).

    Trial division runs up to SQUAREFREE_BOUND; a leftover cofactor is only
    checked for being a perfect square.  If a larger square factor survives,
    ``m`` is simply not squarefree, which costs canonicity but not
    correctness (comparisons go through exact sign tests).
    """
    if n == 0:
        return 0, 1
    s = -1 if n < 0 else 1
    n = abs(n)
    k = 1
    m = 1
    p = 2
    while p * p <= n and p <= SQUAREFREE_BOUND:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            k *= p ** (e // 2)
            if e % 2:
                m *= p
        p += 1 if p == 2 else 2
    r = math.isqrt(n)
    if r * r == n:
        k *= r
    else:
        m *= n
    return k, s * m


@dataclass(frozen=True)
class GaussianRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @staticmethod
    def coerce(x) -> GaussianRational:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(Fraction(x))
        if isinstance(x, complex):
            raise TypeError("binary complex values are not exact")
        return NotImplemented

    def __add__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / self ** (-k)
        out = GaussianRational(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """Squared modulus ``|z|**2``."""
        return self.re * self.re + self.im * self.im

    def __eq__(self, other):
        o = GaussianRational.coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({format_rational(self.re)}, {format_rational(self.im)})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        op = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{op}{format_rational(abs(self.im))}i"


def gaussian_sqrt(z: GaussianRational) -> tuple[GaussianRational, int] | None:
    """Return ``(g, D)`` with ``sqrt(z) = g * sqrt(D)``, D a positive squarefree
    integer, or None when ``|z|`` itself is irrational.

    ``D == 1`` means z is a perfect square in Q(i).
    """
    z = GaussianRational.coerce(z)
    if not z:
        return GaussianRational(0), 1
    w = rational_sqrt(z.norm())
    if w is None:
        return None
    unit = z / w
    if unit == -1:
        g, r = GaussianRational(0, 1), w
    else:
        # (1 + u)^2 = 2 (1 + Re u) u  for |u| = 1
        g, r = 1 + unit, w / (2 * (1 + unit.re))
    k, m = squarefree_decompose(r.numerator * r.denominator)
    return g * Fraction(k, r.denominator), m


def _qn_parts(x) -> tuple[Fraction, Fraction, int] | None:
    if isinstance(x, QuadraticNumber):
        return x.p, x.q, x.D
    if isinstance(x, (int, Fraction)):
        return Fraction(x), Fraction(0), 1
    return None


def _sign_surd(a: Fraction, b: Fraction, d: int) -> int:
    """Sign of ``a + b*sqrt(d)`` for ``d >= 0``."""
    sa, sb = sign(a), sign(b)
    if sb == 0 or d == 0:
        return sa
    if sa == 0 or sa == sb:
        return sb
    # opposite signs: whichever has larger square wins
    return sa * sign(a * a - b * b * d)


def _sign_two_surds(a: Fraction, b: Fraction, d1: int, c: Fraction, d2: int) -> int:
    """Sign of ``a + b*sqrt(d1) + c*sqrt(d2)`` with ``d1, d2 >= 0``."""
    sb, sc = sign(b), sign(c)
    if sb == 0:
        su = sc
    elif sc == 0 or sb == sc:
        su = sb
    else:
        su = sb * sign(b * b * d1 - c * c * d2)
    sa = sign(a)
    if su == 0:
        return sa
    if sa == 0 or sa == su:
        return su
    # |a| vs |u|:  a^2 - u^2 = (a^2 - b^2 d1 - c^2 d2) - 2 b c sqrt(d1 d2)
    return sa * _sign_surd(a * a - b * b * d1 - c * c * d2, -2 * b * c, d1 * d2)


@total_ordering
class QuadraticNumber:
    """Exact real number ``p + q*sqrt(D)``.

    D is kept squarefree (see :func:`squarefree_decompose`) and forced to 1
    whenever ``q == 0``.  Arithmetic is closed within one field Q(sqrt(D));
    mixing rationals in is always allowed.
    """

    __slots__ = ("p", "q", "D")

    def __init__(self, p, q=0, D: int = 1):
        p, q, D = Fraction(p), Fraction(q), int(D)
        if D == 0:
            q, D = Fraction(0), 1
        if q != 0:
            k, m = squarefree_decompose(D)
            q *= k
            D = m
            if D == 1:
                p, q = p + q, Fraction(0)
        if q == 0:
            D = 1
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadraticNumber is immutable")

    @classmethod
    def _raw(cls, p: Fraction, q: Fraction, D: int) -> QuadraticNumber:
        """Skip normalisation; D must already be squarefree."""
        out = object.__new__(cls)
        object.__setattr__(out, "p", p)
        object.__setattr__(out, "q", q)
        object.__setattr__(out, "D", D if q else 1)
        return out

    @classmethod
    def sqrt(cls, r) -> QuadraticNumber:
        """Exact ``sqrt(r)`` for a rational ``r >= 0``."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("square root of a negative rational is not real")
        k, m = squarefree_decompose(r.numerator * r.denominator)
        return cls(0, Fraction(k, r.denominator), m)

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def _join(self, other):
        o = _qn_parts(other)
        if o is None:
            return None
        p2, q2, D2 = o
        if q2 != 0 and self.q != 0 and D2 != self.D:
            raise ValueError(f"cannot combine Q(sqrt({self.D})) with Q(sqrt({D2}))")
        D = self.D if self.q != 0 else D2
        return p2, q2, D

    def __add__(self, other):
        j = self._join(other)
        if j is None:
            return NotImplemented
        p2, q2, D = j
        return QuadraticNumber._raw(self.p + p2, self.q + q2, D)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber._raw(-self.p, -self.q, self.D)

    def __sub__(self, other):
        j = self._join(other)
        if j is None:
            return NotImplemented
        p2, q2, D = j
        return QuadraticNumber._raw(self.p - p2, self.q - q2, D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        j = self._join(other)
        if j is None:
            return NotImplemented
        p2, q2, D = j
        if not q2 and not self.q:
            return QuadraticNumber._raw(self.p * p2, q2, 1)
        return QuadraticNumber._raw(self.p * p2 + self.q * q2 * D, self.p * q2 + self.q * p2, D)

    __rmul__ = __mul__

    def conjugate(self) -> QuadraticNumber:
        """Galois conjugate ``p - q*sqrt(D)``."""
        return QuadraticNumber(self.p, -self.q, self.D)

    def inverse(self) -> QuadraticNumber:
        n = self.p * self.p - self.q * self.q * self.D
        if n == 0:
            raise ZeroDivisionError("division by zero quadratic number")
        return QuadraticNumber(self.p / n, -self.q / n, self.D)

    def __truediv__(self, other):
        o = _qn_parts(other)
        if o is None:
            return NotImplemented
        return self * QuadraticNumber(*o).inverse()

    def __rtruediv__(self, other):
        o = _qn_parts(other)
        if o is None:
            return NotImplemented
        return QuadraticNumber(*o) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return (self ** (-k)).inverse()
        out = QuadraticNumber(1)
        for _ in range(k):
            out = out * self
        return out

    def sign(self) -> int:
        if self.D < 0 and self.q != 0:
            raise ValueError("non-real quadratic number has no sign")
        return _sign_surd(self.p, self.q, self.D)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def _cmp(self, other) -> int | None:
        o = _qn_parts(other)
        if o is None:
            return None
        p2, q2, D2 = o
        if not self.q and not q2:
            return (self.p > p2) - (self.p < p2)
        if self.q == 0 or q2 == 0 or self.D == D2:
            D = self.D if self.q != 0 else D2
            return _sign_surd(self.p - p2, self.q - q2, D)
        return _sign_two_surds(self.p - p2, self.q, self.D, -q2, D2)

    def __eq__(self, other):
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        if c is None:
            return NotImplemented
        return c < 0

    def __hash__(self):
        if self.q == 0:
            return hash(self.p)
        return hash((self.p, self.q, self.D))

    def __bool__(self):
        return self.p != 0 or self.q != 0

    def __float__(self):
        return float(self.p) + float(self.q) * math.sqrt(self.D)

    def __repr__(self):
        if self.q == 0:
            return f"QuadraticNumber({format_rational(self.p)})"
        return (f"QuadraticNumber({format_rational(self.p)}, "
                f"{format_rational(self.q)}, {self.D})")

    def __str__(self):
        if self.q == 0:
            return format_rational(self.p)
        head = f"{format_rational(self.p)}" if self.p else ""
        op = "+" if self.q > 0 else "-"
        q = abs(self.q)
        coef = "" if q == 1 else f"{format_rational(q)}*"
        if not head:
            return f"{'-' if self.q < 0 else ''}{coef}sqrt({self.D})"
        return f"{head}{op}{coef}sqrt({self.D})"


Scalar = Union[Fraction, GaussianRational, QuadraticNumber]


def to_scalar(x, field: str):
    """Coerce a Python value to the exact scalar type used for ``field``."""
    if field == REAL:
        if isinstance(x, QuadraticNumber):
            return x
        if isinstance(x, GaussianRational):
            if x.im != 0:
                raise ValueError(f"non-real entry {x} in a real matrix")
            return x.re
        if isinstance(x, float):
            raise TypeError("binary floats are not exact; pass a string or Fraction")
        if isinstance(x, str):
            return parse_rational(x)
        return Fraction(x)
    if field == COMPLEX:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (float, complex)):
            raise TypeError("binary floats are not exact; pass strings or Fractions")
        if isinstance(x, tuple) and len(x) == 2:
            return GaussianRational(to_scalar(x[0], REAL), to_scalar(x[1], REAL))
        if isinstance(x, str):
            return GaussianRational(parse_rational(x))
        return GaussianRational(Fraction(x))
    raise ValueError(f"unknown field {field!r}")


def _zero(field):
    return GaussianRational(0) if field == COMPLEX else Fraction(0)


def _one(field):
    return GaussianRational(1) if field == COMPLEX else Fraction(1)


@dataclass(frozen=True)
class ExactVector:
    entries: tuple
    field: str = REAL

    @classmethod
    def of(cls, entries: Iterable, field: str = REAL) -> ExactVector:
        return cls(tuple(to_scalar(x, field) for x in entries), field)

    @classmethod
    def zeros(cls, n: int, field: str = REAL) -> ExactVector:
        return cls((_zero(field),) * n, field)

    @classmethod
    def unit(cls, n: int, i: int, field: str = REAL) -> ExactVector:
        return cls(tuple(_one(field) if k == i else _zero(field) for k in range(n)), field)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other: ExactVector) -> ExactVector:
        return ExactVector(tuple(a + b for a, b in zip(self, other, strict=True)), self.field)

    def __sub__(self, other: ExactVector) -> ExactVector:
        return ExactVector(tuple(a - b for a, b in zip(self, other, strict=True)), self.field)

    def __neg__(self) -> ExactVector:
        return ExactVector(tuple(-a for a in self), self.field)

    def scale(self, c) -> ExactVector:
        return ExactVector(tuple(c * a for a in self), self.field)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self)

    def conjugate(self) -> ExactVector:
        if self.field != COMPLEX:
            return self
        return ExactVector(tuple(a.conjugate() for a in self), self.field)

    def __str__(self):
        return "(" + ", ".join(str(a) for a in self) + ")"


@dataclass(frozen=True)
class ExactMatrix:
    rows: tuple
    field: str = REAL

    @classmethod
    def of(cls, rows: Sequence[Sequence], field: str = REAL) -> ExactMatrix:
        rows = tuple(tuple(to_scalar(x, field) for x in r) for r in rows)
        if rows and any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged matrix")
        return cls(rows, field)

    @classmethod
    def identity(cls, n: int, field: str = REAL) -> ExactMatrix:
        return cls(tuple(tuple(_one(field) if i == j else _zero(field) for j in range(n))
                         for i in range(n)), field)

    @classmethod
    def zeros(cls, n: int, m: int | None = None, field: str = REAL) -> ExactMatrix:
        m = n if m is None else m
        return cls(tuple((_zero(field),) * m for _ in range(n)), field)

    @classmethod
    def diag(cls, entries: Sequence, field: str = REAL) -> ExactMatrix:
        n = len(entries)
        return cls.of([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], field)

    @classmethod
    def from_columns(cls, cols: Sequence[ExactVector], field: str = REAL) -> ExactMatrix:
        n = len(cols[0])
        return cls(tuple(tuple(c[i] for c in cols) for i in range(n)), field)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> ExactVector:
        return ExactVector(tuple(r[j] for r in self.rows), self.field)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in
                                 zip(self.rows, other.rows)), self.field)

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        return ExactMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in
                                 zip(self.rows, other.rows)), self.field)

    def __neg__(self) -> ExactMatrix:
        return ExactMatrix(tuple(tuple(-a for a in r) for r in self.rows), self.field)

    def scale(self, c) -> ExactMatrix:
        return ExactMatrix(tuple(tuple(c * a for a in r) for r in self.rows), self.field)

    def __matmul__(self, other):
        if isinstance(other, ExactVector):
            if len(other) != self.shape[1]:
                raise ValueError("dimension mismatch")
            out = []
            for r in self.rows:
                acc = _zero(self.field)
                for a, x in zip(r, other):
                    acc = acc + a * x
                out.append(acc)
            return ExactVector(tuple(out), self.field)
        if isinstance(other, ExactMatrix):
            if self.shape[1] != other.shape[0]:
                raise ValueError("dimension mismatch")
            cols = list(zip(*other.rows))
            rows = []
            for r in self.rows:
                row = []
                for c in cols:
                    acc = _zero(self.field)
                    for a, b in zip(r, c):
                        acc = acc + a * b
                    row.append(acc)
                rows.append(tuple(row))
            return ExactMatrix(tuple(rows), self.field)
        return NotImplemented

    def __pow__(self, k: int) -> ExactMatrix:
        out = ExactMatrix.identity(self.n, self.field)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(tuple(zip(*self.rows)), self.field)

    def conjugate(self) -> ExactMatrix:
        if self.field != COMPLEX:
            return self
        return ExactMatrix(tuple(tuple(a.conjugate() for a in r) for r in self.rows), self.field)

    def trace(self):
        acc = _zero(self.field)
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    def is_identity(self) -> bool:
        return all((a == 1) if i == j else (a == 0)
                   for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def is_scalar(self) -> bool:
        return all(a == 0 for i, r in enumerate(self.rows) for j, a in enumerate(r) if i != j) \
            and all(self.rows[i][i] == self.rows[0][0] for i in range(self.n))

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows) + "]"


def _echelon(rows: list[list]) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rref rows, pivot columns)."""
    m = [list(r) for r in rows]
    if not m:
        return m, []
    n_rows, n_cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == n_rows:
            break
    return m, pivots


def matrix_det(M: ExactMatrix):
    n, m = M.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if n == 1:
        return M[0, 0]
    if n == 2:
        return M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]
    # cofactor expansion along the first row; n <= 4 here
    acc = _zero(M.field)
    for j in range(n):
        if M[0, j] == 0:
            continue
        minor = ExactMatrix(tuple(tuple(r[k] for k in range(n) if k != j) for r in M.rows[1:]),
                            M.field)
        term = M[0, j] * matrix_det(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def matrix_rank(M: ExactMatrix) -> int:
    if M.n == 0:
        return 0
    return len(_echelon([list(r) for r in M.rows])[1])


def matrix_inverse(M: ExactMatrix) -> ExactMatrix:
    n = M.n
    aug = [list(r) + [(_one(M.field) if i == j else _zero(M.field)) for j in range(n)]
           for i, r in enumerate(M.rows)]
    red, pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix(tuple(tuple(r[n:]) for r in red), M.field)


def kernel_basis(M: ExactMatrix) -> list[ExactVector]:
    """Basis of ker(M) from the reduced echelon form (free variables set to unit vectors)."""
    red, pivots = _echelon([list(r) for r in M.rows])
    n_cols = M.shape[1]
    free = [c for c in range(n_cols) if c not in pivots]
    basis = []
    for fcol in free:
        v = [_zero(M.field)] * n_cols
        v[fcol] = _one(M.field)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fcol]
        basis.append(ExactVector(tuple(v), M.field))
    return basis


def charpoly(M: ExactMatrix) -> list:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(xE - M)`` (Faddeev-LeVerrier)."""
    n = M.n
    coeffs = [_one(M.field)]
    Mk = ExactMatrix.zeros(n, field=M.field)
    E = ExactMatrix.identity(n, M.field)
    c = _one(M.field)
    for k in range(1, n + 1):
        Mk = M @ (Mk + E.scale(c))
        c = -Mk.trace() / k
        coeffs.append(c)
    return coeffs


@dataclass(frozen=True)
class SolutionSet:
    """Solution set of an affine linear system.

    ``kind`` is one of ``"empty"``, ``"point"``, ``"coset"``, ``"all"``.  For
    the last three, ``point`` is a particular solution (free variables set to
    zero) and ``basis`` spans the direction space.
    """

    kind: str
    point: ExactVector | None = None
    basis: tuple = ()

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def dimension(self) -> int:
        return -1 if self.is_empty else len(self.basis)


def solve_linear(M: ExactMatrix, rhs: ExactVector) -> SolutionSet:
    """All x with ``M x = rhs``."""
    n_cols = M.shape[1]
    aug = [list(r) + [rhs[i]] for i, r in enumerate(M.rows)]
    red, pivots = _echelon(aug)
    if n_cols in pivots:
        return SolutionSet("empty")
    x = [_zero(M.field)] * n_cols
    for row, pc in zip(red, pivots):
        x[pc] = row[n_cols]
    point = ExactVector(tuple(x), M.field)
    basis = tuple(kernel_basis(M))
    if not basis:
        return SolutionSet("point", point)
    if len(basis) == n_cols:
        return SolutionSet("all", point, basis)
    return SolutionSet("coset", point, basis)


def solve_affine_system(A: ExactMatrix, b: ExactVector) -> SolutionSet:
    """Fixed points of ``x -> Ax + b``: solutions of ``(A - E) x = -b``."""
    if A.field != b.field or A.n != len(b):
        raise ValueError("field or dimension mismatch")
    return solve_linear(A - ExactMatrix.identity(A.n, A.field), -b)


def scalar_to_json(x, field: str):
    """Wire format: rational string for R, ``{"re": ..., "im": ...}`` for C."""
    if field == COMPLEX:
        z = GaussianRational.coerce(x)
        return {"re": format_rational(z.re), "im": format_rational(z.im)}
    return format_rational(x)


def scalar_from_json(obj, field: str):
    if field == COMPLEX:
        if isinstance(obj, dict):
            if set(obj) - {"re", "im"}:
                raise ParseError(f"unexpected keys in complex number: {sorted(obj)}")
            return GaussianRational(parse_rational(obj.get("re", "0")),
                                    parse_rational(obj.get("im", "0")))
        return GaussianRational(parse_rational(obj))
    if field == REAL:
        if isinstance(obj, dict):
            raise ParseError("complex entry in a real document")
        return parse_rational(obj)
    raise ParseError(f"unknown field {field!r}")


def matrix_to_json(M: ExactMatrix):
    return [[scalar_to_json(x, M.field) for x in r] for r in M.rows]


def vector_to_json(v: ExactVector):
    return [scalar_to_json(x, v.field) for x in v]


def matrix_from_json(obj, field: str) -> ExactMatrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise ParseError("matrix must be a non-empty list of rows")
    n = len(obj)
    if any(len(r) != n for r in obj):
        raise ParseError("matrix must be square")
    return ExactMatrix(tuple(tuple(scalar_from_json(x, field) for x in r) for r in obj), field)


def vector_from_json(obj, field: str) -> ExactVector:
    if not isinstance(obj, list) or not obj:
        raise ParseError("vector must be a non-empty list")
    return ExactVector(tuple(scalar_from_json(x, field) for x in obj), field)
