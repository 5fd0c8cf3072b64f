"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
``python tests/test_acceptance.py`` for the lines alone.
"""
from __future__ import annotations

import random
import time
from fractions import Fraction

import numpy as np

from conftest import rand_affine, rand_invertible, rand_invertible_affine
from conjclass.classify import (ORIENTATION_MISMATCH, AffineMap, conjugate, fixed_point_set,
                                signature)
from conjclass.exceptions import NegativeAlphaUnsupported
from conjclass.homeo import synth_nofix_bijective_2d, synth_nofix_singular_2d, synthesize, \
    verify_conjugacy
from conjclass.numeric import (COMPLEX, REAL, ExactMatrix, ExactVector, GaussianRational,
                               matrix_inverse, matrix_rank)
from conjclass.spectral import block_decompose, realify, star_equal, unit_blocks_of

SPACES = [(REAL, 1), (REAL, 2), (COMPLEX, 1), (COMPLEX, 2)]


def report(number: int, title: str, ok: bool, detail: str, started: float) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"\n[criterion {number}] {status}  {title}: {detail} ({time.perf_counter() - started:.1f}s)")


def rng_for(number: int) -> random.Random:
    return random.Random(1000 + number)


# 1 -------------------------------------------------------------------------------

def test_line_census():
    t0 = time.perf_counter()
    rng = rng_for(1)
    pairs = [(Fraction(a), Fraction(b)) for a in (0, 1, -1) for b in (0, 1, -2)]
    for _ in range(10_000):
        pairs.append((Fraction(rng.randint(-30, 30), rng.randint(1, 10)),
                      Fraction(rng.randint(-30, 30), rng.randint(1, 10))))
    all_sigs = {signature(AffineMap.of([[a]], [b])) for a, b in pairs}
    linear_sigs = {signature(AffineMap.of([[a]], [0])) for a, _ in pairs}
    elapsed = time.perf_counter() - t0
    ok = len(all_sigs) == 8 and len(linear_sigs) == 7 and elapsed < 5
    report(1, "line census", ok,
           f"{len(all_sigs)} classes overall, {len(linear_sigs)} with b = 0", t0)
    assert ok


# 2 -------------------------------------------------------------------------------

def test_signature_invariance():
    t0 = time.perf_counter()
    rng = rng_for(2)
    failures = 0
    for k in range(1000):
        field, dim = SPACES[k % 4]
        f = rand_affine(rng, dim, field)
        T = rand_invertible_affine(rng, dim, field)
        failures += signature(f.conjugated_by(T)) != signature(f)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 30
    report(2, "signature invariance", ok, f"{failures} failures in 1000 trials", t0)
    assert ok


# 3 -------------------------------------------------------------------------------

def _related(rng, f: AffineMap) -> AffineMap:
    """Often conjugate to f, sometimes unrelated, so transitivity is exercised."""
    if rng.random() < 0.6:
        return f.conjugated_by(rand_invertible_affine(rng, f.dim, f.field))
    return rand_affine(rng, f.dim, f.field)


def test_equivalence_relation():
    t0 = time.perf_counter()
    rng = rng_for(3)
    failures = chains = 0
    for k in range(1000):
        field, dim = SPACES[k % 4]
        f = rand_affine(rng, dim, field)
        g = _related(rng, f)
        h = _related(rng, g)
        fg, gh, fh = (conjugate(f, g).conjugate, conjugate(g, h).conjugate,
                      conjugate(f, h).conjugate)
        failures += not conjugate(f, f).conjugate
        failures += fg != conjugate(g, f).conjugate
        if fg and gh:
            chains += 1
            failures += not fh
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 10
    report(3, "equivalence relation", ok,
           f"{failures} failures in 1000 triples ({chains} non-vacuous transitivity checks)", t0)
    assert ok


# 4 -------------------------------------------------------------------------------

def _bounded_ratio(rng) -> Fraction:
    """|a| in [1/10, 9/10] or [11/10, 10]."""
    if rng.random() < 0.5:
        return Fraction(rng.randint(1, 9), 10)
    return Fraction(rng.randint(11, 100), 10)


def _line_pair(rng):
    kind = rng.choice(["contract", "expand", "zero", "flip", "shift", "identity"])
    sgn = rng.choice([1, -1])

    def b():
        return Fraction(rng.randint(-30, 30), rng.randint(1, 5))

    def nonzero():
        return Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 5))

    if kind in ("contract", "expand"):
        def slope():
            while True:
                a = _bounded_ratio(rng)
                if (a < 1) == (kind == "contract"):
                    return sgn * a
        return AffineMap.of([[slope()]], [b()]), AffineMap.of([[slope()]], [b()])
    if kind == "zero":
        return AffineMap.of([[0]], [b()]), AffineMap.of([[0]], [b()])
    if kind == "flip":
        return AffineMap.of([[-1]], [b()]), AffineMap.of([[-1]], [b()])
    if kind == "shift":
        return AffineMap.translation([nonzero()]), AffineMap.translation([nonzero()])
    return AffineMap.identity(1), AffineMap.identity(1)


def _unimodular(rng) -> ExactMatrix:
    while True:
        P = ExactMatrix.of([[rng.randint(-2, 2) for _ in range(2)] for _ in range(2)])
        if abs(P[0, 0] * P[1, 1] - P[0, 1] * P[1, 0]) == 1:
            return P


def _plane_map(rng, normal_form, delta) -> AffineMap:
    """``P (M x + delta) P^-1``-style instance: linear part P M P^-1, translation P delta."""
    P = _unimodular(rng)
    A = P @ ExactMatrix.of(normal_form) @ matrix_inverse(P)
    return AffineMap(A, P @ ExactVector.of(delta))


def _small_nonzero(rng) -> Fraction:
    return Fraction(rng.choice([-1, 1]) * rng.randint(1, 4), rng.randint(1, 2))


def _bijective_pair(rng):
    def one():
        if rng.random() < 0.4:
            return _plane_map(rng, [[1, 1], [0, 1]], [rng.randint(-2, 2), _small_nonzero(rng)])
        alpha = rng.choice([Fraction(1, 3), Fraction(1, 2), Fraction(2, 3), Fraction(3, 2),
                            Fraction(2), Fraction(3)])
        return _plane_map(rng, [[1, 0], [0, alpha]], [_small_nonzero(rng), rng.randint(-2, 2)])
    if rng.random() < 0.3:
        return one(), AffineMap.translation([rng.randint(-2, 2), _small_nonzero(rng)])
    return one(), one()


def _singular_pair(rng):
    def one():
        return _plane_map(rng, [[1, 0], [0, 0]], [_small_nonzero(rng), rng.randint(-3, 3)])
    return one(), one()


def _translation_pair(rng, k):
    field, dim = [(REAL, 2), (COMPLEX, 1), (COMPLEX, 2)][k % 3]

    def vec():
        while True:
            v = ExactVector.of([GaussianRational(rng.randint(-3, 3), rng.randint(-3, 3))
                                if field == COMPLEX else rng.randint(-3, 3)
                                for _ in range(dim)], field)
            if not v.is_zero():
                return v
    E = ExactMatrix.identity(dim, field)
    return AffineMap(E, vec()), AffineMap(E, vec())


FAMILIES = [
    ("line pairs", lambda rng, k: _line_pair(rng)),
    ("plane fixed-point free bijective", lambda rng, k: _bijective_pair(rng)),
    ("plane fixed-point free singular", lambda rng, k: _singular_pair(rng)),
    ("translations over R^2, C^1, C^2", _translation_pair),
]


def test_constructive_witnesses():
    """Judged on max_residual as the criterion states; round-trip error is reported alongside."""
    t0 = time.perf_counter()
    rng = rng_for(4)
    lines = []
    failures = 0
    worst = 0.0
    roundtrip_ok = 0
    for name, make in FAMILIES:
        bad = 0
        for k in range(500):
            f, g = make(rng, k)
            h = synthesize(f, g)
            tol = 1e-12 if h.is_rational_only else 1e-9
            rep = verify_conjugacy(f, g, h, samples=10_000, tolerance=tol)
            worst = max(worst, rep.max_residual)
            bad += not rep.max_residual <= tol
            roundtrip_ok += rep.max_roundtrip <= 1e-9
        failures += bad
        lines.append(f"{name}: {500 - bad}/500")
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 60
    report(4, "constructive witnesses", ok,
           "; ".join(lines) + f"; worst residual {worst:.2e}; "
           f"round trip within 1e-9 for {roundtrip_ok}/2000", t0)
    assert ok


# 5 -------------------------------------------------------------------------------

def test_worked_identities():
    t0 = time.perf_counter()
    checks = {}
    f = AffineMap.of([[1, 1], [0, 1]], [0, 1])
    g = AffineMap.translation([0, 1])
    h = synth_nofix_bijective_2d(f, g)
    checks["unipotent shear chain"] = (
        [p.kind for p, _ in h.chain] == ["ParabolicShear"]
        and verify_conjugacy(f, g, h, tolerance=1e-12).passed)

    f = AffineMap.of([[1, 0], [0, 2]], [1, 0])
    g = AffineMap.translation([1, 0])
    h = synth_nofix_bijective_2d(f, g)
    checks["fibre scaling chain"] = (
        [p.kind for p, _ in h.chain] == ["ExpFiberScale"]
        and verify_conjugacy(f, g, h).passed)

    f = AffineMap.of([[1, 0], [0, 0]], [1, 0])
    g = AffineMap.of([[1, 0], [0, 0]], [2, 5])
    h = synth_nofix_singular_2d(f, g)
    checks["singular chain"] = (
        h.exact_affine() == AffineMap.of([[2, 0], [0, 1]], [0, 5])
        and verify_conjugacy(f, g, h, tolerance=1e-12).passed)

    lam = GaussianRational(Fraction(3, 5), Fraction(4, 5))
    mu = GaussianRational(0, 1)

    def units(rows):
        return unit_blocks_of(ExactMatrix.of(rows, COMPLEX))

    first = star_equal(units([[lam, 0], [0, mu]]), units([[lam, 0], [0, mu.conjugate()]]))
    second = star_equal(units([[lam, 1], [0, lam]]), units([[lam, 0], [0, lam.conjugate()]]))
    checks["star equality (true, false)"] = (first, second) == (True, False)

    ok = all(checks.values())
    report(5, "worked identities", ok,
           ", ".join(f"{k} {'ok' if v else 'WRONG'}" for k, v in checks.items()), t0)
    assert ok


# 6 -------------------------------------------------------------------------------

GRID = sorted({Fraction(n, d) for n in range(-2, 3) for d in (1, 2, 3)})


def test_fixed_point_grids():
    t0 = time.perf_counter()
    failures = cases = 0
    for b1 in GRID:
        for b2 in GRID:
            cases += 1
            f = AffineMap.of([[1, 1], [0, 1]], [b1, b2])
            failures += fixed_point_set(f).is_empty != (b2 != 0)
            for alpha in GRID + [Fraction(3), Fraction(-3)]:
                if alpha == 1:
                    continue
                cases += 1
                f = AffineMap.of([[1, 0], [0, alpha]], [b1, b2])
                failures += fixed_point_set(f).is_empty != (b1 != 0)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 5
    report(6, "fixed-point criteria", ok, f"{failures} mismatches in {cases} grid cases", t0)
    assert ok


# 7 -------------------------------------------------------------------------------

def test_glide_reflection_guard():
    t0 = time.perf_counter()
    f = AffineMap.of([[1, 0], [0, -1]], [1, 0])
    g = AffineMap.translation([0, 1])
    verdict = conjugate(f, g)
    try:
        synthesize(f, g)
        refused = False
    except NegativeAlphaUnsupported:
        refused = True
    codes = [w.code for w in verdict.warnings]
    ok = verdict.conjugate and ORIENTATION_MISMATCH in codes and refused
    report(7, "glide reflection guard", ok,
           f"conjugate={verdict.conjugate}, warnings={codes}, synthesis refused={refused}", t0)
    assert ok


# 8 -------------------------------------------------------------------------------

def _realified_ranks(A: ExactMatrix) -> tuple[int, int]:
    """Contracting / expanding eigenvalue counts of the realification from LAPACK.

    The eigenvalue pool keeps every modulus at least 0.29 away from 0 and 1, far
    beyond the sqrt(eps) perturbation of a defective eigenvalue.
    """
    M = np.array([[float(x) for x in r] for r in realify(A).rows])
    moduli = np.abs(np.linalg.eigvals(M))
    plus = int(np.sum((moduli > 1e-6) & (moduli < 1 - 1e-6)))
    minus = int(np.sum(moduli > 1 + 1e-6))
    return plus, minus


def test_realification():
    t0 = time.perf_counter()
    rng = rng_for(8)
    pool = [GaussianRational(Fraction(1, 2)), GaussianRational(0, Fraction(1, 3)),
            GaussianRational(2, 1), GaussianRational(0, 1), GaussianRational(Fraction(3, 5), Fraction(4, 5)),
            GaussianRational(0), GaussianRational(Fraction(-1, 2), Fraction(1, 2)),
            GaussianRational(-3), GaussianRational(1, 1)]
    failures = 0
    for _ in range(200):
        P = rand_invertible(rng, 2, COMPLEX)
        l1, l2 = rng.choice(pool), rng.choice(pool)
        top = 1 if l1 == l2 and rng.random() < 0.5 else 0
        A = P @ ExactMatrix.of([[l1, top], [0, l2]], COMPLEX) @ matrix_inverse(P)
        B = rand_invertible(rng, 2, COMPLEX)
        sig = block_decompose(A)
        failures += _realified_ranks(A) != (2 * sig.rank_plus, 2 * sig.rank_minus)
        failures += realify(A @ B) != realify(A) @ realify(B)
        failures += matrix_rank(realify(A)) != 2 * matrix_rank(A)
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < 10
    report(8, "realification", ok, f"{failures} failures over 200 matrices", t0)
    assert ok


if __name__ == "__main__":
    import sys
    tests = [test_line_census, test_signature_invariance, test_equivalence_relation,
             test_constructive_witnesses, test_worked_identities, test_fixed_point_grids,
             test_glide_reflection_guard, test_realification]
    failed = 0
    for test in tests:
        try:
            test()
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
