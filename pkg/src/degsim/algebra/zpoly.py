"""Dense integer polynomial kernels.

Two layers live here, both on plain tuples for speed:

* ``ZPoly``: polynomial in one variable (mu) with integer coefficients,
  ascending order, no trailing zeros; the zero polynomial is ``()``.
* ``ZTPoly``: polynomial in t whose coefficients are ZPolys, i.e. an element
  of Z[mu][t].  Also ascending and trimmed.

Everything above (BiPoly, RatFunc, SNF) is built on these.  GCDs use the
primitive polynomial remainder sequence, which keeps coefficients bounded
without ever leaving the integers.
"""

from __future__ import annotations

from math import gcd

ZPoly = tuple  # tuple[int, ...]
ZTPoly = tuple  # tuple[ZPoly, ...]

ZERO: ZPoly = ()
ONE: ZPoly = (1,)


def ztrim(a) -> ZPoly:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return tuple(a)


def zdeg(a: ZPoly) -> int:
    return len(a) - 1


def zadd(a: ZPoly, b: ZPoly) -> ZPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return ztrim(out)


def zsub(a: ZPoly, b: ZPoly) -> ZPoly:
    out = list(a) + [0] * (len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return ztrim(out)


def zneg(a: ZPoly) -> ZPoly:
    return tuple(-c for c in a)


def zscale(a: ZPoly, k: int) -> ZPoly:
    if k == 0:
        return ZERO
    return tuple(c * k for c in a)


def zmul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return ZERO
    if len(a) == 1:
        return zscale(b, a[0])
    if len(b) == 1:
        return zscale(a, b[0])
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def zeval(a: ZPoly, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def zcontent(a: ZPoly) -> int:
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            return 1
    return g


def zprimitive(a: ZPoly) -> ZPoly:
    """Primitive part with positive leading coefficient."""
    if not a:
        return ZERO
    g = zcontent(a)
    if a[-1] < 0:
        g = -g
    if g == 1:
        return a
    return tuple(c // g for c in a)


def zdivmod_exact_lc(a: ZPoly, b: ZPoly) -> tuple[ZPoly, ZPoly] | None:
    """Division over Z; returns None as soon as a quotient coefficient is not integral."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(a)
    lb = b[-1]
    db = len(b) - 1
    if len(r) - 1 < db:
        return ZERO, ztrim(r)
    q = [0] * (len(r) - db)
    for k in range(len(r) - 1 - db, -1, -1):
        c = r[k + db]
        if c == 0:
            continue
        qc, rem = divmod(c, lb)
        if rem:
            return None
        q[k] = qc
        for i, y in enumerate(b):
            r[k + i] -= qc * y
    return ztrim(q), ztrim(r[:db])


def zdivexact(a: ZPoly, b: ZPoly) -> ZPoly:
    res = zdivmod_exact_lc(a, b)
    if res is None or res[1]:
        raise ArithmeticError("inexact polynomial division")
    return res[0]


def zdivides(b: ZPoly, a: ZPoly) -> bool:
    if not a:
        return True
    if not b:
        return False
    res = zdivmod_exact_lc(a, b)
    return res is not None and not res[1]


def zprem(a: ZPoly, b: ZPoly) -> ZPoly:
    """Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, computed in Z[x]."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    r = list(a)
    if len(r) - 1 < db:
        return ztrim(r)
    lb = b[-1]
    e = len(r) - 1 - db + 1
    while len(r) - 1 >= db and r:
        c = r[-1]
        shift = len(r) - 1 - db
        r = [x * lb for x in r]
        for i, y in enumerate(b):
            r[shift + i] -= c * y
        r = list(ztrim(r))
        e -= 1
    if e > 0:
        f = lb**e
        r = [x * f for x in r]
    return tuple(r)


PRIME = (1 << 61) - 1


def mod_gcd_degree(a: list[int], b: list[int], p: int = PRIME) -> int | None:
    """Degree of gcd(a, b) over GF(p), or None when reduction drops a leading coefficient."""
    a = [x % p for x in a]
    b = [x % p for x in b]
    if not a or not b or a[-1] == 0 or b[-1] == 0:
        return None
    while b:
        inv = pow(b[-1], p - 2, p)
        db = len(b) - 1
        while len(a) - 1 >= db and a:
            f = a[-1] * inv % p
            shift = len(a) - 1 - db
            for i, y in enumerate(b):
                a[shift + i] = (a[shift + i] - f * y) % p
            while a and a[-1] == 0:
                a.pop()
        a, b = b, a
    return len(a) - 1


def zgcd(a: ZPoly, b: ZPoly) -> ZPoly:
    """GCD in Z[x]: primitive with positive leading coefficient, times gcd of contents."""
    if not a:
        return zprimitive(b) if not b else zscale(zprimitive(b), zcontent(b))
    if not b:
        return zscale(zprimitive(a), zcontent(a))
    c = gcd(zcontent(a), zcontent(b))
    a, b = zprimitive(a), zprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    if len(b) > 1 and mod_gcd_degree(list(a), list(b)) == 0:
        # a modular image of the gcd is constant, so the true gcd is too
        return (c,)
    while b:
        if len(b) == 1:
            return (c,)
        r = zprem(a, b)
        a, b = b, zprimitive(r)
    return zscale(a, c)


# --------------------------------------------------------------------------
# Z[mu][t]


def tztrim(p) -> ZTPoly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(p)


def tzdeg(p: ZTPoly) -> int:
    return len(p) - 1


def tzadd(p: ZTPoly, q: ZTPoly) -> ZTPoly:
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] = zadd(out[i], c)
    return tztrim(out)


def tzsub(p: ZTPoly, q: ZTPoly) -> ZTPoly:
    out = list(p) + [ZERO] * (len(q) - len(p))
    for i, c in enumerate(q):
        out[i] = zsub(out[i], c)
    return tztrim(out)


def tzscale(p: ZTPoly, c: ZPoly) -> ZTPoly:
    if not c:
        return ()
    if c == ONE:
        return p
    return tztrim(zmul(x, c) for x in p)


def tzmul(p: ZTPoly, q: ZTPoly) -> ZTPoly:
    if not p or not q:
        return ()
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                if y:
                    out[i + j] = zadd(out[i + j], zmul(x, y))
    return tztrim(out)


def tzshift(p: ZTPoly, k: int) -> ZTPoly:
    if not p:
        return p
    return (ZERO,) * k + tuple(p)


def tzcontent(p: ZTPoly) -> ZPoly:
    g = ZERO
    for c in p:
        if c:
            g = zgcd(g, c)
            if g == ONE:
                return g
    return g


def tzdivexact_z(p: ZTPoly, c: ZPoly) -> ZTPoly:
    if c == ONE:
        return p
    return tuple(zdivexact(x, c) if x else ZERO for x in p)


def tzprimitive(p: ZTPoly) -> ZTPoly:
    """Divide out the Z[mu]-content and make the leading coefficient's lc positive."""
    if not p:
        return p
    c = tzcontent(p)
    if p[-1][-1] < 0:
        c = zneg(c)
    return tzdivexact_z(p, c)


def tzprem(a: ZTPoly, b: ZTPoly) -> tuple[ZTPoly, ZTPoly, int]:
    """Pseudo-division in t: lc(b)^k * a = q*b + r with deg r < deg b.

    Returns (q, r, k).  Uses only as many lc multiplications as there are
    nonzero elimination steps.
    """
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    db = len(b) - 1
    lb = b[-1]
    r = list(a)
    q: list = [ZERO] * max(len(r) - db, 0)
    k = 0
    while r and len(r) - 1 >= db:
        c = r[-1]
        shift = len(r) - 1 - db
        if lb != ONE:
            r = [zmul(x, lb) for x in r]
            q = [zmul(x, lb) for x in q]
            k += 1
        q[shift] = zadd(q[shift], c)
        for i, y in enumerate(b):
            if y:
                r[shift + i] = zsub(r[shift + i], zmul(c, y))
        r = list(tztrim(r))
    return tztrim(q), tuple(r), k


def tzdivides(b: ZTPoly, a: ZTPoly) -> bool:
    """Does b divide a in Q(mu)[t]?"""
    if not a:
        return True
    if not b:
        return False
    if len(b) == 1:
        return True
    return not tzprem(a, b)[1]


def tzgcd(a: ZTPoly, b: ZTPoly) -> ZTPoly:
    """GCD in Z[mu][t] = content gcd times primitive-PRS gcd of primitive parts."""
    if not a:
        return tzprimitive(b)
    if not b:
        return tzprimitive(a)
    c = zgcd(tzcontent(a), tzcontent(b))
    a, b = tzprimitive(a), tzprimitive(b)
    if len(a) < len(b):
        a, b = b, a
    if len(b) > 1 and _coprime_image(a, b):
        return (zprimitive(c),)
    while b:
        if len(b) == 1:
            return (zprimitive(c),)
        _, r, _ = tzprem(a, b)
        a, b = b, tzprimitive(r)
    return tzscale(a, zprimitive(c))


_SPECIAL_POINTS = (1000003, 7919, 104729)


def _coprime_image(a: ZTPoly, b: ZTPoly) -> bool:
    """True if some specialization mu -> m (mod a prime) keeps both t-degrees and is coprime.

    Such an image bounds the t-degree of the gcd over Q(mu) by zero.
    """
    for m in _SPECIAL_POINTS:
        ia = [zeval(c, m) for c in a]
        ib = [zeval(c, m) for c in b]
        d = mod_gcd_degree(ia, ib)
        if d == 0:
            return True
        if d is not None:
            return False
    return False


def tzeval(p: ZTPoly, t, mu):
    acc = 0
    for c in reversed(p):
        acc = acc * t + zeval(c, mu)
    return acc


def tzbitsize(p: ZTPoly) -> int:
    return sum(abs(x).bit_length() for c in p for x in c)
