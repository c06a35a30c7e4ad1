"""Smith normal form and determinant divisors over Q(mu)[t].

Elimination runs on rows cleared into Z[mu][t].  Multiplying a row or column
by a nonzero element of Z[mu] is multiplication by a unit of Q(mu)[t], so the
integer representation never changes the invariant factors; it only keeps
every intermediate polynomial free of fractions.  Row contents are divided
out after each update to hold coefficient growth down.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import zpoly as zp
from .linalg import det_by_interpolation, det_integer, interpolate
from .poly import BiPoly
from .ratfunc import QmuPoly


class PolyMatrix:
    """Rectangular matrix whose entries are polynomials in t over Q(mu)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence]):
        rows = [[_as_qmu(e) for e in r] for r in entries]
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ValueError("PolyMatrix rows must all have the same length")
        self.rows = len(rows)
        self.cols = width
        self.entries = tuple(tuple(r) for r in rows)

    def __getitem__(self, ij: tuple[int, int]) -> QmuPoly:
        i, j = ij
        return self.entries[i][j]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows])

    def z_rows(self) -> list[list[zp.ZTPoly]]:
        """Each row scaled by a common denominator into Z[mu][t]."""
        out = []
        for row in self.entries:
            d = zp.ONE
            for e in row:
                for c in e.coeffs:
                    if c.den != zp.ONE and not zp.zdivides(c.den, d):
                        g = zp.zgcd(d, c.den)
                        d = zp.zmul(d, zp.zdivexact(c.den, g))
            out.append(
                [zp.tztrim(zp.zmul(c.num, zp.zdivexact(d, c.den)) for c in e.coeffs) for e in row]
            )
        return out

    def __repr__(self) -> str:
        return f"PolyMatrix({self.rows}x{self.cols})"


def _as_qmu(e) -> QmuPoly:
    if isinstance(e, QmuPoly):
        return e
    if isinstance(e, BiPoly):
        return QmuPoly.from_bipoly(e)
    return QmuPoly((e,))


@dataclass(frozen=True)
class SNFResult:
    """Invariant factors, monic in t, plus primitive integer forms for printing."""

    invariant_factors: tuple[QmuPoly, ...]
    integer_forms: tuple[BiPoly, ...]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SNFResult):
            return NotImplemented
        return self.invariant_factors == other.invariant_factors

    def __hash__(self) -> int:
        return hash(self.invariant_factors)

    def unit_count(self) -> int:
        return sum(1 for f in self.invariant_factors if f.degree() == 0)

    def to_json(self) -> list:
        return [f.to_json() for f in self.integer_forms]


RESIDUAL_MINOR_LIMIT = 20_000


def _key(p: zp.ZTPoly) -> tuple[int, int]:
    # t-degree, then coefficient size; callers append a fill-in estimate
    return (len(p), zp.tzbitsize(p))


def _is_integer(e: zp.ZTPoly) -> bool:
    return len(e) == 1 and len(e[0]) == 1


def _pick(w: list, s: int, accept) -> tuple[int, int] | None:
    nr, nc = len(w), len(w[0])
    rcount = [sum(1 for j in range(s, nc) if w[i][j]) for i in range(nr)]
    ccount = [sum(1 for i in range(s, nr) if w[i][j]) for j in range(nc)]
    best = None
    for i in range(s, nr):
        row = w[i]
        for j in range(s, nc):
            e = row[j]
            if e and accept(e):
                k = _key(e) + ((rcount[i] - 1) * (ccount[j] - 1),)
                if best is None or k < best[0]:
                    best = (k, i, j)
    return None if best is None else best[1:]


def _move(w: list, s: int, i: int, j: int) -> None:
    w[s], w[i] = w[i], w[s]
    if j != s:
        for row in w:
            row[s], row[j] = row[j], row[s]


def _content_divide(row: list, start: int) -> None:
    g = zp.ZERO
    for e in row[start:]:
        for c in e:
            if c:
                g = zp.zgcd(g, c)
                if g == zp.ONE:
                    return
    if g and g != zp.ONE:
        row[start:] = [zp.tzdivexact_z(e, g) if e else e for e in row[start:]]


def _combine(a: zp.ZTPoly, ca: zp.ZPoly, b: zp.ZTPoly, cb: zp.ZTPoly) -> zp.ZTPoly:
    """ca*a - cb*b with ca in Z[mu] and cb in Z[mu][t]."""
    left = zp.tzscale(a, ca) if a else ()
    if not b or not cb:
        return left
    return zp.tzsub(left, zp.tzmul(cb, b))


def _zpow(c: zp.ZPoly, k: int) -> zp.ZPoly:
    out = zp.ONE
    for _ in range(k):
        out = zp.zmul(out, c)
    return out


def _clear_unit(w: list, s: int) -> None:
    """Pivot w[s][s] is constant in t: clear its column, then its row."""
    nr, nc = len(w), len(w[0])
    c = w[s][s][0]
    prow = w[s]
    for i in range(s + 1, nr):
        row = w[i]
        a = row[s]
        if not a:
            continue
        for j in range(s + 1, nc):
            row[j] = _combine(row[j], c, prow[j], a)
        row[s] = ()
        _content_divide(row, s + 1)
    # the column is zero below the pivot, so column operations that clear
    # row s leave every other entry alone
    for j in range(s + 1, nc):
        prow[j] = ()


def _euclid(w: list, s: int) -> zp.ZTPoly:
    """Reduce until w[s][s] divides its row, column and the trailing block."""
    nr, nc = len(w), len(w[0])
    while True:
        p = w[s][s]
        if len(p) == 1:
            _clear_unit(w, s)
            return (zp.ONE,)
        lc = p[-1]
        dirty = False
        prow = w[s]
        for i in range(s + 1, nr):
            row = w[i]
            a = row[s]
            if not a:
                continue
            q, r, k = zp.tzprem(a, p)
            scale = _zpow(lc, k)
            for j in range(s + 1, nc):
                row[j] = _combine(row[j], scale, prow[j], q)
            row[s] = r
            dirty = dirty or bool(r)
            _content_divide(row, s)
        for j in range(s + 1, nc):
            b = prow[j]
            if not b:
                continue
            q, r, k = zp.tzprem(b, p)
            scale = _zpow(lc, k)
            for i in range(s + 1, nr):
                w[i][j] = _combine(w[i][j], scale, w[i][s], q)
            prow[j] = r
            dirty = dirty or bool(r)
        if dirty:
            # a remainder of smaller degree now exists; make it the pivot
            sub = [row[s:] for row in w[s:]]
            i, j = min(
                ((i, j) for i in range(len(sub)) for j in range(len(sub[0])) if sub[i][j]),
                key=lambda ij: _key(sub[ij[0]][ij[1]]),
            )
            _move(w, s, s + i, s + j)
            continue
        bad = next(
            (i for i in range(s + 1, nr) for j in range(s + 1, nc) if w[i][j] and not zp.tzdivides(p, w[i][j])),
            None,
        )
        if bad is None:
            return zp.tzprimitive(p)
        w[s] = [zp.tzadd(x, y) for x, y in zip(w[s], w[bad])]


def _minor_gcd(block: list, k: int, floor_deg: int) -> zp.ZTPoly:
    """gcd of the k x k minors; stops once the t-degree reaches ``floor_deg``."""
    nr, nc = len(block), len(block[0])
    g: zp.ZTPoly = ()
    for rs in combinations(range(nr), k):
        for cs in combinations(range(nc), k):
            if k == 1:
                d = block[rs[0]][cs[0]]
            else:
                d = det_z([[block[i][j] for j in cs] for i in rs])
            if not d:
                continue
            g = zp.tzgcd(g, d) if g else zp.tzprimitive(d)
            if len(g) - 1 <= floor_deg:
                return g
    return g


def _divisor_factors(block: list) -> list[zp.ZTPoly]:
    """Invariant factors of a small block from its determinantal divisors."""
    size = min(len(block), len(block[0]))
    out: list[zp.ZTPoly] = []
    prev_D: zp.ZTPoly = (zp.ONE,)
    prev_d: zp.ZTPoly = (zp.ONE,)
    for k in range(1, size + 1):
        # D_k is a multiple of D_{k-1} * d_{k-1}, which bounds its degree below
        D = _minor_gcd(block, k, (len(prev_D) - 1) + (len(prev_d) - 1))
        if not D:
            out.extend(() for _ in range(size - k + 1))
            break
        q, r, _ = zp.tzprem(D, prev_D)
        assert not r, "determinantal divisors must form a divisibility chain"
        d = zp.tzprimitive(q)
        out.append(d)
        prev_D, prev_d = D, d
    return out


def snf_z(w: list[list[zp.ZTPoly]], residual_limit: int = RESIDUAL_MINOR_LIMIT) -> list[zp.ZTPoly]:
    """Invariant factors (up to units) of a matrix over Z[mu][t]; ``w`` is consumed.

    Integer pivots are used first since they are units that cause no growth
    in mu.  Once none is left, a residual block small enough (by minor count)
    is finished from its determinantal divisors; a larger one continues by
    Euclidean elimination with minimal-degree pivots.
    """
    nr = len(w)
    nc = len(w[0]) if w else 0
    size = min(nr, nc)
    factors: list[zp.ZTPoly] = []
    s = 0
    while s < size:
        pick = _pick(w, s, _is_integer)
        if pick is not None:
            _move(w, s, *pick)
            _clear_unit(w, s)
            factors.append((zp.ONE,))
            s += 1
            continue
        if not any(w[i][j] for i in range(s, nr) for j in range(s, nc)):
            factors.extend(() for _ in range(size - s))
            break
        r, c = nr - s, nc - s
        if sum(comb(r, k) * comb(c, k) for k in range(1, min(r, c) + 1)) <= residual_limit:
            factors.extend(_divisor_factors([row[s:] for row in w[s:]]))
            break
        _move(w, s, *_pick(w, s, bool))
        factors.append(_euclid(w, s))
        s += 1
    return factors


def _finish(factors: Iterable[zp.ZTPoly]) -> SNFResult:
    monic = []
    forms = []
    for f in factors:
        q = QmuPoly.from_ztpoly(f)
        if q.is_zero():
            monic.append(q)
            forms.append(BiPoly())
        else:
            q = q.monic()
            monic.append(q)
            forms.append(q.primitive_bipoly())
    return SNFResult(tuple(monic), tuple(forms))


def snf(m: PolyMatrix, residual_limit: int = RESIDUAL_MINOR_LIMIT) -> SNFResult:
    """Smith normal form over Q(mu)[t]; min(rows, cols) invariant factors."""
    return _finish(snf_z(m.z_rows(), residual_limit))


class DivisorLimitError(RuntimeError):
    """Too many minors for direct enumeration and the SNF fallback is disabled."""


def _row_degree(row: Sequence[zp.ZTPoly]) -> tuple[int, int]:
    dt = max((len(e) - 1 for e in row if e), default=0)
    dm = max((len(c) - 1 for e in row for c in e if c), default=0)
    return dt, dm


def det_z(rows: list[list[zp.ZTPoly]]) -> zp.ZTPoly:
    """Determinant of a square Z[mu][t] matrix by evaluation and interpolation."""
    n = len(rows)
    if n == 0:
        return (zp.ONE,)
    dt = dm = 0
    for r in rows:
        a, b = _row_degree(r)
        dt += a
        dm += b

    def evaluate(t, mu):
        return [[zp.tzeval(e, t, mu) if e else 0 for e in r] for r in rows]

    bp = det_by_interpolation(evaluate, dt, dm)
    p, d = bp.to_ztpoly()
    assert d == 1
    return p


def determinant_divisor(
    m: PolyMatrix, k: int, limit: int = 10**6, snf_fallback: bool = True
) -> QmuPoly:
    """gcd of all k x k minors, monic in t (the zero polynomial if all vanish)."""
    if not 0 <= k <= min(m.rows, m.cols):
        raise ValueError(f"k={k} outside 0..{min(m.rows, m.cols)}")
    if k == 0:
        return QmuPoly((1,))
    if comb(m.rows, k) * comb(m.cols, k) > limit:
        if not snf_fallback:
            raise DivisorLimitError(
                f"{comb(m.rows, k) * comb(m.cols, k)} minors exceed the limit {limit}"
            )
        res = snf(m)
        out = QmuPoly((1,))
        for f in res.invariant_factors[:k]:
            out = out * f
        return out.monic()
    z = m.z_rows()
    g: zp.ZTPoly = ()
    image = None
    deferred = []
    for rs, cs in _spread_minors(m.rows, m.cols, k):
        sub = [[z[i][j] for j in cs] for i in rs]
        if image is not None:
            # images at a point where lc_t(g) survives bound the gcd's degree
            mu0, gimg = image
            dimg = _t_image(sub, mu0)
            if not dimg:
                deferred.append(sub)
                continue
            e = zp.mod_gcd_degree(gimg, dimg)
            if e == 0:
                return QmuPoly((1,))
            if e == len(g) - 1:
                # probably a multiple of g; confirm only if g survives to the end
                deferred.append(sub)
                continue
        d = det_z(sub)
        if not d:
            continue
        g = zp.tzgcd(g, d) if g else zp.tzprimitive(d)
        if len(g) == 1:
            return QmuPoly((1,))
        image = _good_image(g)
    for sub in deferred:
        d = det_z(sub)
        if d:
            g = zp.tzgcd(g, d) if g else zp.tzprimitive(d)
            if len(g) == 1:
                return QmuPoly((1,))
    if not g:
        return QmuPoly()
    return QmuPoly.from_ztpoly(g).monic()


def _good_image(g: zp.ZTPoly) -> tuple[int, list[int]] | None:
    for mu0 in (1000003, 7919, 104729, 15485863):
        if zp.zeval(g[-1], mu0) % zp.PRIME:
            return mu0, [zp.zeval(c, mu0) for c in g]
    return None


def _t_image(rows: list[list[zp.ZTPoly]], mu0: int) -> list[int]:
    """Coefficients of det(rows)(t, mu0) as integers."""
    dt = sum(_row_degree(r)[0] for r in rows)
    ts = list(range(dt + 1))
    vals = [det_integer([[zp.tzeval(e, t, mu0) if e else 0 for e in r] for r in rows]) for t in ts]
    coeffs = interpolate(ts, vals)
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return [int(c) for c in coeffs]


def _unrank(n: int, k: int, r: int) -> tuple[int, ...]:
    """The r-th k-subset of range(n) in lexicographic order."""
    out = []
    x = 0
    for left in range(k, 0, -1):
        while True:
            c = comb(n - x - 1, left - 1)
            if r < c:
                break
            r -= c
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def _spread_minors(nr: int, nc: int, k: int):
    """All (rows, cols) index pairs in a fixed shuffled order.

    Neighbouring minors in lexicographic order share most of their rows and
    columns and tend to share factors; a shuffled order reaches a coprime
    pair much sooner when the divisor is 1.
    """
    a, b = comb(nr, k), comb(nc, k)
    order = list(range(a * b))
    random.Random(0).shuffle(order)
    for idx in order:
        yield _unrank(nr, k, idx // b), _unrank(nc, k, idx % b)
