import random
from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from degsim.algebra import (
    BiPoly,
    DegreeBoundError,
    DivisorLimitError,
    PolyMatrix,
    QmuPoly,
    RatFunc,
    UniPoly,
    char_poly_rational,
    det_bipoly,
    det_integer,
    det_rational,
    determinant_divisor,
    gcd_bipoly,
    inverse,
    matmul,
    nullspace,
    snf,
)
from degsim.algebra.linalg import identity, interpolate

T, MU = BiPoly.t(), BiPoly.mu()


def perm_sign(p):
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        s *= (-1) ** (length - 1)
    return s


def leibniz(m):
    n = len(m)
    total = 0
    for p in permutations(range(n)):
        term = perm_sign(p)
        for i in range(n):
            term = term * m[i][p[i]]
        total = total + term
    return total


small_ints = st.integers(-6, 6)


@st.composite
def int_matrices(draw, max_n=5):
    n = draw(st.integers(0, max_n))
    return [[draw(small_ints) for _ in range(n)] for _ in range(n)]


# determinants -------------------------------------------------------------------


@given(int_matrices())
def test_det_integer_matches_leibniz(m):
    assert det_integer(m) == leibniz(m)


@given(int_matrices(max_n=4), st.integers(1, 5))
def test_det_rational_scales(m, d):
    q = [[Fraction(x, d) for x in row] for row in m]
    assert det_rational(q) == Fraction(leibniz(m), d ** len(m))


def random_bipoly(rng, dt=1, dm=1, span=3):
    return BiPoly([[rng.randint(-span, span) for _ in range(dm + 1)] for _ in range(dt + 1)])


def test_det_bipoly_matches_leibniz():
    rng = random.Random(1)
    for n in range(1, 5):
        for _ in range(5):
            m = [[random_bipoly(rng) for _ in range(n)] for _ in range(n)]
            assert det_bipoly(m, n, n) == leibniz(m)


def test_det_bipoly_rejects_low_bound():
    with pytest.raises(DegreeBoundError):
        det_bipoly([[T * T]], 1, 0)


@given(int_matrices(max_n=5))
def test_char_poly_matches_sympy(m):
    n = len(m)
    ours = char_poly_rational(m)
    ref = sympy.Matrix(n, n, lambda i, j: m[i][j]).charpoly().all_coeffs() if n else [1]
    assert list(reversed(ours.coeffs)) == [int(c) for c in ref]


def test_char_poly_faddeev_leverrier():
    # independent recurrence: c_{n-k} = -tr(A M_k)/k with M_k = A M_{k-1} + c_{n-k+1} I
    rng = random.Random(5)
    for n in range(1, 7):
        a = [[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        coeffs = [Fraction(1)]
        mk = [[Fraction(0)] * n for _ in range(n)]
        for k in range(1, n + 1):
            am = matmul(a, mk)
            mk = [[am[i][j] + (coeffs[-1] if i == j else 0) for j in range(n)] for i in range(n)]
            amk = matmul(a, mk)
            coeffs.append(-sum(amk[i][i] for i in range(n)) / k)
        assert char_poly_rational(a) == UniPoly(list(reversed(coeffs)))


# interpolation -------------------------------------------------------------------


@given(st.lists(st.integers(-50, 50), min_size=1, max_size=9), st.integers(-5, 5))
def test_interpolation_recovers_polynomials(coeffs, x0):
    p = UniPoly(coeffs)
    xs = list(range(x0, x0 + len(coeffs)))
    ys = [p(x) for x in xs]
    assert UniPoly(interpolate(xs, ys)) == p
    # the general (non-consecutive) path agrees
    xs2 = [2 * x + 1 for x in xs]
    assert UniPoly(interpolate(xs2, [p(x) for x in xs2])) == p


def test_interpolation_with_rational_result():
    # x(x-1)/2 takes integer values but has rational coefficients
    assert interpolate([0, 1, 2], [0, 0, 1]) == [0, Fraction(-1, 2), Fraction(1, 2)]


# exact linear algebra ---------------------------------------------------------------


def test_inverse_and_nullspace():
    rng = random.Random(2)
    for _ in range(20):
        n = rng.randint(1, 5)
        m = [[rng.randint(-5, 5) for _ in range(n)] for _ in range(n)]
        if det_integer(m) == 0:
            with pytest.raises(ZeroDivisionError):
                inverse(m)
        else:
            assert matmul(m, inverse(m)) == identity(n)
        rows = [{j: v for j, v in enumerate(r) if v} for r in m]
        basis = nullspace(rows, n)
        assert len(basis) == n - sympy.Matrix(m).rank()
        for vec in basis:
            assert all(sum(r[j] * vec[j] for j in range(n)) == 0 for r in m)


# polynomial gcds -----------------------------------------------------------------


ALPHA = T - MU + 1
BETA = T + MU
GAMMA = T * MU - 2


def test_gcd_examples():
    assert gcd_bipoly(ALPHA * BETA, BETA * GAMMA) == BETA.primitive()
    assert gcd_bipoly(T * T - 1, T - 1) == T - 1
    assert gcd_bipoly(BETA, BiPoly()) == BETA.primitive()


def test_gcd_properties():
    rng = random.Random(3)
    for _ in range(25):
        a, b, c = (random_bipoly(rng, 1, 1) for _ in range(3))
        if a.is_zero() or b.is_zero() or c.is_zero():
            continue
        g = gcd_bipoly(a * c, b * c)
        assert g == gcd_bipoly(b * c, a * c)
        assert (a * c).divexact(g) * g == a * c
        assert (b * c).divexact(g) * g == b * c
        assert (g.divexact(c.primitive()) * c.primitive()) == g


def test_ratfunc_normal_form():
    half = RatFunc((1,), (2,))
    assert RatFunc((2, 2), (4, 4)) == half
    assert RatFunc((1,), (-2,)) == RatFunc((-1,), (2,))
    assert RatFunc.mu() * RatFunc.mu().inverse() == RatFunc.from_rational(1)
    with pytest.raises(ZeroDivisionError):
        RatFunc((1,), ())


# Smith normal form -----------------------------------------------------------------


def qmu(p: BiPoly) -> QmuPoly:
    return QmuPoly.from_bipoly(p)


def test_snf_examples():
    res = snf(PolyMatrix([[T, 0], [0, T * (T + MU)]]))
    assert res.invariant_factors == (qmu(T), qmu(T * (T + MU)))
    k2 = PolyMatrix([[T + MU, -1], [-1, T + MU]])
    res = snf(k2)
    assert res.invariant_factors == (qmu(BiPoly.const(1)), qmu((T + MU) * (T + MU) - 1))
    assert res.unit_count() == 1
    # mu is a unit of Q(mu)
    assert snf(PolyMatrix([[MU]])).invariant_factors == (qmu(BiPoly.const(1)),)
    assert snf(PolyMatrix([[0, 0], [0, 0]])).invariant_factors == (QmuPoly(), QmuPoly())


def random_poly_matrix(rng, rows, cols, dt=1, dm=1):
    return [[random_bipoly(rng, rng.randint(0, dt), rng.randint(0, dm), 2) for _ in range(cols)] for _ in range(rows)]


def unimodular(rng, n):
    """Product of elementary operations with polynomial multipliers."""
    u = [[BiPoly.const(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(3 if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        f = random_bipoly(rng, 1, 1, 2)
        u[i] = [a + f * b for a, b in zip(u[i], u[j])]
    return u


def poly_matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), BiPoly()) for col in zip(*b)] for row in a]


def check_snf_invariants(entries, rng):
    m = PolyMatrix(entries)
    res = snf(m)
    fs = res.invariant_factors
    k = min(m.rows, m.cols)
    assert len(fs) == k
    nonzero = [f for f in fs if not f.is_zero()]
    assert fs[: len(nonzero)] == tuple(nonzero)
    for f in nonzero:
        assert f == f.monic()
    for a, b in zip(fs, fs[1:]):
        if not b.is_zero():
            assert a.divides(b)
    prod = QmuPoly((1,))
    for j in range(1, k + 1):
        prod = prod * fs[j - 1]
        assert determinant_divisor(m, j) == prod.monic()
    if m.rows == m.cols:
        d = det_bipoly(entries, sum(max(e.deg_t() for e in r) for r in entries) + 1, 2 * m.rows + 1)
        assert qmu(d).monic() == prod.monic()
        u, v = unimodular(rng, m.rows), unimodular(rng, m.cols)
        assert snf(PolyMatrix(poly_matmul(poly_matmul(u, entries), v))) == res


def test_snf_invariants_random():
    rng = random.Random(4)
    for _ in range(25):
        r, c = rng.randint(1, 3), rng.randint(1, 3)
        check_snf_invariants(random_poly_matrix(rng, r, c), rng)


def test_determinant_divisor_limit():
    m = PolyMatrix([[T + i + j for j in range(4)] for i in range(4)])
    with pytest.raises(DivisorLimitError):
        determinant_divisor(m, 2, limit=10, snf_fallback=False)
    assert determinant_divisor(m, 2, limit=10) == determinant_divisor(m, 2)
    with pytest.raises(ValueError):
        determinant_divisor(m, 5)
    assert determinant_divisor(m, 0) == QmuPoly((1,))
