"""Exact dense linear algebra over Z and Q.

Matrices are lists of row lists.  Determinants of polynomial matrices are
obtained by evaluation at integer grid points (each a fraction-free Bareiss
determinant) followed by dense interpolation; one extra off-grid evaluation
guards against an understated degree bound.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial, lcm
from typing import Callable, Sequence

from .poly import BiPoly, UniPoly

Matrix = list  # list[list[Rational]]


class DegreeBoundError(ValueError):
    """The interpolated determinant disagrees with a direct check evaluation."""


def _require_square(m: Sequence[Sequence]) -> int:
    n = len(m)
    for row in m:
        if len(row) != n:
            raise ValueError(f"matrix is not square: {n} rows, a row of length {len(row)}")
    return n


def det_integer(m: Sequence[Sequence[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix."""
    n = _require_square(m)
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        rowk = a[k]
        akk = rowk[k]
        tail_k = rowk[k + 1 :]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            if aik == 0:
                if akk == prev:
                    continue
                rowi[k + 1 :] = [x * akk // prev for x in rowi[k + 1 :]]
            else:
                rowi[k + 1 :] = [(x * akk - aik * y) // prev for x, y in zip(rowi[k + 1 :], tail_k)]
        prev = akk
    return sign * a[n - 1][n - 1]


def clear_rows(m: Sequence[Sequence]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return (integer matrix, product of row scalings)."""
    out = []
    scale = 1
    for row in m:
        d = 1
        for c in row:
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        out.append([int(c * d) for c in row])
        scale *= d
    return out, scale


def det_rational(m: Sequence[Sequence]) -> Fraction | int:
    _require_square(m)
    if all(type(c) is int for row in m for c in row):
        return det_integer(m)
    im, scale = clear_rows(m)
    d = det_integer(im)
    if scale == 1:
        return d
    f = Fraction(d, scale)
    return f.numerator if f.denominator == 1 else f


def _interpolate_consecutive(x0: int, ys: list[int]) -> list[int] | None:
    """Integer-only interpolation at x0, x0+1, ...; None if the result is not integral.

    Newton's forward form sum_k (Delta^k y_0) C(x - x0, k), scaled by (n-1)!
    so every step stays in Z.
    """
    n = len(ys)
    diffs = []
    row = ys
    for _ in range(n):
        diffs.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    big = factorial(n - 1)
    # acc = sum_k diffs[k] * big/k! * (x-x0)(x-x0-1)...(x-x0-k+1), Horner from the top
    poly = [0] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - x0 - k) + diffs[k] * big / k!
        shift = x0 + k
        new = [0] * n
        for i in range(n - 1):
            if poly[i]:
                new[i + 1] += poly[i]
                new[i] -= shift * poly[i]
        new[0] += diffs[k] * (big // factorial(k))
        poly = new
    out = []
    for c in poly:
        q, r = divmod(c, big)
        if r:
            return None
        out.append(q)
    return out


def interpolate(xs: Sequence[int], ys: Sequence) -> list:
    """Coefficients (ascending) of the unique polynomial of degree < len(xs) through the points."""
    n = len(xs)
    if n and all(type(y) is int for y in ys) and list(xs) == list(range(xs[0], xs[0] + n)):
        fast = _interpolate_consecutive(xs[0], list(ys))
        if fast is not None:
            return fast
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # Newton form -> monomial basis
    poly = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        shifted = [Fraction(0)] + poly[:-1]
        poly = [s - xs[k] * p for s, p in zip(shifted, poly)]
        poly[0] += coef[k]
    return [c.numerator if c.denominator == 1 else c for c in poly]


def det_by_interpolation(
    evaluate: Callable[[int, int], Sequence[Sequence]],
    deg_t: int,
    deg_mu: int,
    t0: int = 0,
    mu0: int = 0,
    names: tuple[str, str] = ("t", "mu"),
) -> BiPoly:
    """Interpolate a bivariate determinant from integer-grid evaluations.

    ``evaluate(t, mu)`` returns the numeric matrix at that point.  The grid is
    (deg_t + 1) x (deg_mu + 1) consecutive integers from (t0, mu0).
    """
    ts = list(range(t0, t0 + deg_t + 1))
    mus = list(range(mu0, mu0 + deg_mu + 1))
    by_mu = []
    for mu in mus:
        vals = [det_rational(evaluate(t, mu)) for t in ts]
        by_mu.append(interpolate(ts, vals))
    rows = []
    for i in range(deg_t + 1):
        rows.append(interpolate(mus, [col[i] for col in by_mu]))
    result = BiPoly(rows, names)
    tc, mc = t0 + deg_t + 3, mu0 + deg_mu + 2
    if result(tc, mc) != det_rational(evaluate(tc, mc)):
        raise DegreeBoundError(f"degree bound ({deg_t}, {deg_mu}) exceeded: check evaluation at ({tc}, {mc}) disagrees")
    return result


def det_bipoly(matrix: Sequence[Sequence[BiPoly]], deg_t_bound: int, deg_mu_bound: int) -> BiPoly:
    """Exact determinant of a square matrix of bivariate polynomials."""
    n = _require_square(matrix)
    names = next((e.names for row in matrix for e in row if isinstance(e, BiPoly)), ("t", "mu"))
    if n == 0:
        return BiPoly.const(1, names)
    entries = [[e if isinstance(e, BiPoly) else BiPoly.const(e) for e in row] for row in matrix]
    for row in entries:
        for e in row:
            if e.deg_t() > deg_t_bound or e.deg_mu() > deg_mu_bound:
                raise DegreeBoundError(f"entry {e} exceeds the degree bound ({deg_t_bound}, {deg_mu_bound})")

    def evaluate(t, mu):
        return [[e(t, mu) for e in row] for row in entries]

    return det_by_interpolation(evaluate, deg_t_bound, deg_mu_bound, names=names)


def char_poly_rational(m: Sequence[Sequence]) -> UniPoly:
    """det(tI - M) by interpolation over t = 0..n."""
    n = _require_square(m)
    im, scale = clear_rows(m)
    # det(tI - M) = det(diag(s) (tI - M)) / prod(s) with s the row scalings
    row_scale = []
    for row in m:
        d = 1
        for c in row:
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        row_scale.append(d)
    ts = list(range(n + 1))
    vals = []
    for t in ts:
        a = [[-x for x in r] for r in im]
        for i in range(n):
            a[i][i] += row_scale[i] * t
        vals.append(Fraction(det_integer(a), scale))
    return UniPoly(interpolate(ts, vals))


# --------------------------------------------------------------------------
# basic matrix helpers


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col) if x and y) for col in bt] for row in a]


def transpose(a: Sequence[Sequence]) -> Matrix:
    return [list(c) for c in zip(*a)]


def inverse(m: Sequence[Sequence]) -> Matrix:
    """Gauss-Jordan inverse over Q; raises ZeroDivisionError if singular."""
    n = _require_square(m)
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("matrix is singular")
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c] != 0:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [[_fold(x) for x in row[n:]] for row in a]


def _fold(x):
    return x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x


def nullspace(rows: Sequence[dict[int, int]], ncols: int) -> list[list]:
    """Basis of {x : row . x = 0 for every row} over Q.

    Rows are sparse ``{column: coefficient}`` dicts.  Returns dense vectors,
    one per free column, each with a 1 in its free column.
    """
    pivots: dict[int, dict[int, Fraction]] = {}  # pivot column -> reduced row (pivot coeff 1)
    for raw in rows:
        row = {c: Fraction(v) for c, v in raw.items() if v}
        # pivot rows are fully reduced, so one pass over the pivot columns suffices
        for c in [c for c in row if c in pivots]:
            f = row.pop(c)
            for k, v in pivots[c].items():
                if k == c:
                    continue
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        pc = min(row)
        inv = 1 / row[pc]
        row = {k: v * inv for k, v in row.items()}
        # keep reduced form: remove pc from existing pivot rows
        for other in pivots.values():
            if pc in other:
                f = other[pc]
                for k, v in row.items():
                    nv = other.get(k, 0) - f * v
                    if nv:
                        other[k] = nv
                    else:
                        other.pop(k, None)
        pivots[pc] = row
    basis = []
    for free in range(ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * ncols
        vec[free] = Fraction(1)
        for pc, row in pivots.items():
            if free in row:
                vec[pc] = -row[free]
        basis.append([_fold(x) for x in vec])
    return basis


def rank(rows: Sequence[Sequence]) -> int:
    ncols = len(rows[0]) if rows else 0
    sparse = [{j: v for j, v in enumerate(r) if v} for r in rows]
    return ncols - len(nullspace(sparse, ncols))
