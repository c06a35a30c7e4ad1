"""The field Q(mu) and polynomials in t over it."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable

from . import zpoly as zp
from .poly import BiPoly, UniPoly


class RatFunc:
    """Reduced quotient num/den of integer polynomials in mu.

    Normal form: gcd(num, den) = 1 in Z[mu] (integer content included), the
    denominator's leading coefficient is positive, and zero is 0/1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Iterable[int] = (), den: Iterable[int] = (1,)):
        n = zp.ztrim(num)
        d = zp.ztrim(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        if not n:
            self.num, self.den = zp.ZERO, zp.ONE
            return
        g = zp.zgcd(n, d)
        if g != zp.ONE:
            n, d = zp.zdivexact(n, g), zp.zdivexact(d, g)
        if d[-1] < 0:
            n, d = zp.zneg(n), zp.zneg(d)
        self.num, self.den = n, d

    @classmethod
    def from_rational(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c.numerator,), (c.denominator,))

    @classmethod
    def from_unipoly(cls, p: UniPoly) -> "RatFunc":
        d = 1
        for c in p.coeffs:
            if isinstance(c, Fraction):
                d = lcm(d, c.denominator)
        return cls([int(c * d) for c in p.coeffs], (d,))

    @classmethod
    def mu(cls) -> "RatFunc":
        return cls((0, 1))

    def is_zero(self) -> bool:
        return not self.num

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        return RatFunc.from_rational(other)

    def __eq__(self, other) -> bool:
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            return self == RatFunc.from_rational(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __add__(self, other) -> "RatFunc":
        o = self._coerce(other)
        if self.den == o.den:
            return RatFunc(zp.zadd(self.num, o.num), self.den)
        return RatFunc(
            zp.zadd(zp.zmul(self.num, o.den), zp.zmul(o.num, self.den)),
            zp.zmul(self.den, o.den),
        )

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        r = RatFunc.__new__(RatFunc)
        r.num, r.den = zp.zneg(self.num), self.den
        return r

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._coerce(other) - self

    def __mul__(self, other) -> "RatFunc":
        o = self._coerce(other)
        return RatFunc(zp.zmul(self.num, o.num), zp.zmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other) -> "RatFunc":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other) -> "RatFunc":
        return self._coerce(other) * self.inverse()

    def __call__(self, mu):
        d = zp.zeval(self.den, mu)
        return Fraction(zp.zeval(self.num, mu), d)

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        n = UniPoly(self.num).to_str("mu")
        if self.den == zp.ONE:
            return n
        d = UniPoly(self.den).to_str("mu")
        return f"({n})/({d})"


class QmuPoly:
    """Polynomial in t with coefficients in Q(mu); ``coeffs[i]`` multiplies t^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [c if isinstance(c, RatFunc) else RatFunc.from_rational(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def from_bipoly(cls, p: BiPoly) -> "QmuPoly":
        return cls(RatFunc.from_unipoly(p.t_coeff(i)) for i in range(p.deg_t() + 1))

    @classmethod
    def from_ztpoly(cls, p: zp.ZTPoly) -> "QmuPoly":
        return cls(RatFunc(c) for c in p)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, QmuPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "QmuPoly") -> "QmuPoly":
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        z = RatFunc()
        return QmuPoly((a[i] if i < len(a) else z) + (b[i] if i < len(b) else z) for i in range(n))

    def __neg__(self) -> "QmuPoly":
        return QmuPoly(-c for c in self.coeffs)

    def __sub__(self, other: "QmuPoly") -> "QmuPoly":
        return self + (-other)

    def __mul__(self, other) -> "QmuPoly":
        if not isinstance(other, QmuPoly):
            other = QmuPoly((other,))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QmuPoly()
        out = [RatFunc() for _ in range(len(a) + len(b) - 1)]
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return QmuPoly(out)

    __rmul__ = __mul__

    def __divmod__(self, other: "QmuPoly") -> tuple["QmuPoly", "QmuPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        db = other.degree()
        inv = other.coeffs[-1].inverse()
        if len(r) - 1 < db:
            return QmuPoly(), self
        q = [RatFunc() for _ in range(len(r) - db)]
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] * inv
            q[k] = c
            if not c.is_zero():
                for i, y in enumerate(other.coeffs):
                    r[k + i] = r[k + i] - c * y
        return QmuPoly(q), QmuPoly(r[:db])

    def __mod__(self, other: "QmuPoly") -> "QmuPoly":
        return divmod(self, other)[1]

    def divides(self, other: "QmuPoly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "QmuPoly":
        if self.is_zero():
            return self
        inv = self.coeffs[-1].inverse()
        return QmuPoly(c * inv for c in self.coeffs)

    def to_ztpoly(self) -> zp.ZTPoly:
        """Scale by the lcm of denominators; the result is an associate in Q(mu)[t]."""
        d = zp.ONE
        for c in self.coeffs:
            if c.den != zp.ONE and not zp.zdivides(c.den, d):
                g = zp.zgcd(d, c.den)
                d = zp.zmul(d, zp.zdivexact(c.den, g))
        return zp.tztrim(zp.zmul(c.num, zp.zdivexact(d, c.den)) for c in self.coeffs)

    def primitive_bipoly(self) -> BiPoly:
        """Denominator-cleared primitive integer form, positive graded-lex leading term."""
        return BiPoly.from_ztpoly(self.to_ztpoly()).primitive()

    def __call__(self, t, mu):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c(mu)
        return acc

    def __repr__(self) -> str:
        return f"QmuPoly({self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            cs = str(c)
            if not mono:
                parts.append(f"({cs})")
            elif cs == "1":
                parts.append(mono)
            else:
                parts.append(f"({cs})*{mono}")
        return " + ".join(parts)
