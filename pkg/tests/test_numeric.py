from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conjclass.exceptions import ParseError, ZeroDenominator
from conjclass.numeric import (COMPLEX, REAL, ExactMatrix, ExactVector, GaussianRational,
                               QuadraticNumber, charpoly, gaussian_sqrt, kernel_basis,
                               matrix_det, matrix_inverse, matrix_rank, normalize_rational,
                               parse_rational, scalar_from_json, scalar_to_json,
                               solve_affine_system, squarefree_decompose)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
surds = st.sampled_from([1, 2, 3, 5, 6, 7, 10, 11])


def _sym(M: ExactMatrix) -> sympy.Matrix:
    def conv(x):
        if isinstance(x, GaussianRational):
            return sympy.Rational(x.re) + sympy.I * sympy.Rational(x.im)
        return sympy.Rational(x)
    return sympy.Matrix([[conv(x) for x in r] for r in M.rows])


def _mp(x: QuadraticNumber):
    with mpmath.workdps(60):
        return mpmath.mpf(x.p.numerator) / x.p.denominator + \
            mpmath.mpf(x.q.numerator) / x.q.denominator * mpmath.sqrt(x.D)


class TestRationals:
    @pytest.mark.parametrize("text, expected", [
        ("3", Fraction(3)), ("-3/4", Fraction(-3, 4)), ("6/8", Fraction(3, 4)),
        ("0.5", Fraction(1, 2)), ("-1.25", Fraction(-5, 4)), (7, Fraction(7)),
    ])
    def test_parse(self, text, expected):
        assert parse_rational(text) == expected

    @pytest.mark.parametrize("bad", [0.5, True, "abc", "1/0x", "", None, "1e3"])
    def test_parse_rejects(self, bad):
        with pytest.raises((ParseError, ZeroDenominator)):
            parse_rational(bad)

    def test_zero_denominator(self):
        with pytest.raises(ZeroDenominator):
            normalize_rational(1, 0)
        with pytest.raises(ZeroDenominator):
            parse_rational("1/0")

    @given(st.integers(min_value=1, max_value=10**7))
    def test_squarefree(self, n):
        k, m = squarefree_decompose(n)
        assert k * k * m == n
        assert sympy.factorint(m) == {} or max(sympy.factorint(m).values()) == 1


class TestGaussian:
    @given(rationals, rationals, rationals, rationals)
    def test_field_ops_match_complex(self, a, b, c, d):
        z, w = GaussianRational(a, b), GaussianRational(c, d)
        ref = complex(float(a), float(b)) * complex(float(c), float(d))
        assert abs(complex(z * w) - ref) < 1e-9
        if w != 0:
            assert (z / w) * w == z
        assert z.norm() == a * a + b * b

    @pytest.mark.parametrize("z, expected", [
        (GaussianRational(3), (GaussianRational(1), 3)),
        (GaussianRational(-4), (GaussianRational(0, 2), 1)),
        (GaussianRational(3, 4), (GaussianRational(2, 1), 1)),
    ])
    def test_sqrt_examples(self, z, expected):
        assert gaussian_sqrt(z) == expected

    def test_sqrt_absent(self):
        assert gaussian_sqrt(GaussianRational(1, 2)) is None

    @given(rationals, rationals)
    def test_sqrt_squares_back(self, a, b):
        z = GaussianRational(a, b)
        out = gaussian_sqrt(z)
        if out is not None:
            g, D = out
            assert g * g * D == z


class TestQuadratic:
    @given(rationals, rationals, surds, rationals, rationals, surds)
    @settings(max_examples=300)
    def test_ordering_matches_high_precision(self, p1, q1, d1, p2, q2, d2):
        x, y = QuadraticNumber(p1, q1, d1), QuadraticNumber(p2, q2, d2)
        diff = _mp(x) - _mp(y)
        if abs(diff) > mpmath.mpf(10) ** -40:
            assert (x < y) == (diff < 0)
            assert (x > y) == (diff > 0)
        else:
            assert x == y

    @given(rationals, rationals, surds)
    def test_inverse(self, p, q, d):
        x = QuadraticNumber(p, q, d)
        if x != 0:
            assert x * x.inverse() == 1

    def test_sqrt_normalises(self):
        r = QuadraticNumber.sqrt(Fraction(8))
        assert (r.p, r.q, r.D) == (0, 2, 2)
        assert QuadraticNumber.sqrt(Fraction(9, 4)) == Fraction(3, 2)

    def test_mixed_surds_refuse_arithmetic(self):
        with pytest.raises(ValueError):
            QuadraticNumber(0, 1, 2) + QuadraticNumber(0, 1, 3)


class TestLinearAlgebra:
    @given(st.lists(rationals, min_size=4, max_size=4))
    def test_det_rank_inverse_match_sympy(self, xs):
        M = ExactMatrix.of([xs[:2], xs[2:]])
        S = _sym(M)
        assert matrix_det(M) == S.det()
        assert matrix_rank(M) == S.rank()
        if S.det() != 0:
            assert _sym(matrix_inverse(M)) == S.inv()
        else:
            with pytest.raises(ZeroDivisionError):
                matrix_inverse(M)

    def test_charpoly_matches_sympy(self, rng):
        from conftest import rand_matrix
        x = sympy.Symbol("x")
        for field in (REAL, COMPLEX):
            for n in (1, 2, 3):
                M = rand_matrix(rng, n, field)
                ours = [complex(GaussianRational.coerce(c)) for c in charpoly(M)]
                ref = [complex(c) for c in sympy.Poly(_sym(M).charpoly(x).as_expr(), x).all_coeffs()]
                assert ours == pytest.approx(ref)

    def test_kernel(self):
        M = ExactMatrix.of([[2, 4], [1, 2]])
        (v,) = kernel_basis(M)
        assert (M @ v).is_zero()

    @pytest.mark.parametrize("A, b, kind, dimension", [
        ([[2]], [1], "point", 0),
        ([[1]], [1], "empty", -1),
        ([[1]], [0], "all", 1),
        ([[1, 0], [0, 2]], [0, -1], "coset", 1),
        ([[1, 1], [0, 1]], [0, 1], "empty", -1),
        ([[1, 0], [0, 0]], [0, 3], "coset", 1),
    ])
    def test_affine_solutions(self, A, b, kind, dimension):
        M, v = ExactMatrix.of(A), ExactVector.of(b)
        sol = solve_affine_system(M, v)
        assert sol.kind == kind
        assert sol.dimension == dimension
        if not sol.is_empty:
            assert M @ sol.point + v == sol.point


class TestWire:
    @pytest.mark.parametrize("x, field, doc", [
        (Fraction(-3, 4), REAL, "-3/4"),
        (GaussianRational(1, Fraction(-1, 2)), COMPLEX, {"re": "1", "im": "-1/2"}),
    ])
    def test_scalar_round_trip(self, x, field, doc):
        assert scalar_to_json(x, field) == doc
        assert scalar_from_json(doc, field) == x

    def test_complex_in_real_document(self):
        with pytest.raises(ParseError):
            scalar_from_json({"re": "1", "im": "0"}, REAL)
