"""Univariate and bivariate polynomials with exact rational coefficients.

Coefficients are Python ``int`` or ``fractions.Fraction``; both are exact and
mix freely.  Integral Fractions are folded back to ``int`` so that equality and
hashing behave the same whichever route produced a value.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from . import zpoly as zp

Rational = int | Fraction


def _norm(c) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _trim(coeffs: Iterable) -> tuple:
    out = [_norm(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def _render(terms: list[tuple[Rational, str]]) -> str:
    """Join (coefficient, monomial) pairs into ``3*t^2 - mu + 1`` style text."""
    if not terms:
        return "0"
    out = []
    for k, (c, mono) in enumerate(terms):
        a = -c if c < 0 else c
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


def _monomial(name: str, k: int) -> str:
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"


class UniPoly:
    """Dense polynomial in one variable; ``coeffs[i]`` multiplies x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def x(cls) -> "UniPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c: Rational) -> "UniPoly":
        return cls((c,))

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UniPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"

    def _coerce(self, other) -> "UniPoly":
        if isinstance(other, UniPoly):
            return other
        return UniPoly((other,))

    def __add__(self, other) -> "UniPoly":
        o = self._coerce(other).coeffs
        a = self.coeffs
        n = max(len(a), len(o))
        return UniPoly((a[i] if i < len(a) else 0) + (o[i] if i < len(o) else 0) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UniPoly":
        return UniPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UniPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "UniPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "UniPoly":
        o = self._coerce(other).coeffs
        a = self.coeffs
        if not a or not o:
            return UniPoly()
        out = [0] * (len(a) + len(o) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(o):
                    out[i + j] += x * y
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UniPoly":
        out = UniPoly((1,))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other) -> tuple["UniPoly", "UniPoly"]:
        b = self._coerce(other)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = [Fraction(c) for c in self.coeffs]
        db = b.degree()
        lb = Fraction(b.lc())
        if len(r) - 1 < db:
            return UniPoly(), self
        q = [Fraction(0)] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db] / lb
            q[k] = c
            if c:
                for i, y in enumerate(b.coeffs):
                    r[k + i] -= c * y
        return UniPoly(q), UniPoly(r[:db])

    def __floordiv__(self, other) -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UniPoly":
        return divmod(self, other)[1]

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return _norm(acc) if isinstance(acc, Fraction) else acc

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = Fraction(self.lc())
        return UniPoly(c / lc for c in self.coeffs)

    def compose_neg(self) -> "UniPoly":
        """p(-x)."""
        return UniPoly(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def to_str(self, var: str = "t") -> str:
        terms = [(c, _monomial(var, i)) for i, c in reversed(list(enumerate(self.coeffs))) if c != 0]
        return _render(terms)

    __str__ = to_str

    def to_json(self) -> list:
        return [json_num(c) for c in self.coeffs]


def unipoly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def json_num(c: Rational):
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return c


class BiPoly:
    """Dense polynomial in (t, mu), or in (t, alpha); ``coeffs[i][j]`` multiplies t^i mu^j.

    The array is rectangular with trailing zero rows and columns trimmed.
    """

    __slots__ = ("coeffs", "names")

    def __init__(self, coeffs: Sequence[Sequence[Rational]] = (), names: tuple[str, str] = ("t", "mu")):
        rows = [list(r) for r in coeffs]
        width = max((len(r) for r in rows), default=0)
        rows = [[_norm(c) for c in r] + [0] * (width - len(r)) for r in rows]
        while rows and all(c == 0 for c in rows[-1]):
            rows.pop()
        while width and all(r[width - 1] == 0 for r in rows):
            width -= 1
        self.coeffs = tuple(tuple(r[:width]) for r in rows)
        self.names = names

    # construction ---------------------------------------------------------

    @classmethod
    def from_dict(cls, terms: dict[tuple[int, int], Rational], names=("t", "mu")) -> "BiPoly":
        if not terms:
            return cls((), names)
        dt = max(i for i, _ in terms)
        dm = max(j for _, j in terms)
        rows = [[0] * (dm + 1) for _ in range(dt + 1)]
        for (i, j), c in terms.items():
            rows[i][j] += c
        return cls(rows, names)

    @classmethod
    def t(cls, names=("t", "mu")) -> "BiPoly":
        return cls(((0,), (1,)), names)

    @classmethod
    def mu(cls, names=("t", "mu")) -> "BiPoly":
        return cls(((0, 1),), names)

    @classmethod
    def const(cls, c: Rational, names=("t", "mu")) -> "BiPoly":
        return cls(((c,),), names)

    @classmethod
    def from_ztpoly(cls, p: zp.ZTPoly, names=("t", "mu")) -> "BiPoly":
        return cls([list(c) for c in p], names)

    # inspection -----------------------------------------------------------

    def deg_t(self) -> int:
        return len(self.coeffs) - 1

    def deg_mu(self) -> int:
        return len(self.coeffs[0]) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int, j: int) -> Rational:
        if i < len(self.coeffs) and j < len(self.coeffs[i]):
            return self.coeffs[i][j]
        return 0

    def terms(self) -> dict[tuple[int, int], Rational]:
        return {(i, j): c for i, r in enumerate(self.coeffs) for j, c in enumerate(r) if c != 0}

    def __eq__(self, other) -> bool:
        if isinstance(other, BiPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == BiPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("BiPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"BiPoly({self.to_str()!r})"

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other) -> "BiPoly":
        if isinstance(other, BiPoly):
            return other
        return BiPoly.const(other, self.names)

    def __add__(self, other) -> "BiPoly":
        o = self._coerce(other)
        terms = self.terms()
        for k, c in o.terms().items():
            terms[k] = terms.get(k, 0) + c
        return BiPoly.from_dict(terms, self.names)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly([[-c for c in r] for r in self.coeffs], self.names)

    def __sub__(self, other) -> "BiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "BiPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "BiPoly":
        o = self._coerce(other)
        if self.is_zero() or o.is_zero():
            return BiPoly((), self.names)
        dt, dm = self.deg_t() + o.deg_t(), self.deg_mu() + o.deg_mu()
        rows = [[0] * (dm + 1) for _ in range(dt + 1)]
        bt = o.terms()
        for (i, j), c in self.terms().items():
            for (k, l), d in bt.items():
                rows[i + k][j + l] += c * d
        return BiPoly(rows, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "BiPoly":
        out = BiPoly.const(1, self.names)
        for _ in range(k):
            out = out * self
        return out

    def __call__(self, t, mu):
        acc = 0
        for row in reversed(self.coeffs):
            inner = 0
            for c in reversed(row):
                inner = inner * mu + c
            acc = acc * t + inner
        return _norm(acc) if isinstance(acc, Fraction) else acc

    def subs_mu(self, mu: Rational) -> UniPoly:
        """Specialize the second variable, leaving a polynomial in t."""
        return UniPoly(sum((c * mu**j for j, c in enumerate(r)), 0) for r in self.coeffs)

    def subs_t(self, t: Rational) -> UniPoly:
        m = self.deg_mu() + 1
        return UniPoly(sum((r[j] * t**i for i, r in enumerate(self.coeffs)), 0) for j in range(m))

    def t_coeff(self, i: int) -> UniPoly:
        """Coefficient of t^i as a polynomial in the second variable."""
        return UniPoly(self.coeffs[i]) if i < len(self.coeffs) else UniPoly()

    # integer views --------------------------------------------------------

    def denominator(self) -> int:
        d = 1
        for r in self.coeffs:
            for c in r:
                if isinstance(c, Fraction):
                    d = lcm(d, c.denominator)
        return d

    def to_ztpoly(self) -> tuple[zp.ZTPoly, int]:
        """Return (p, d) with p integral and self == p / d."""
        d = self.denominator()
        p = zp.tztrim(zp.ztrim(int(c * d) for c in r) for r in self.coeffs)
        return p, d

    def leading_term(self) -> tuple[int, int]:
        """Graded-lex leading exponent with t > mu."""
        return max(self.terms(), key=lambda e: (e[0] + e[1], e[0]))

    def primitive(self) -> "BiPoly":
        """Integer primitive form with positive graded-lex leading coefficient."""
        if self.is_zero():
            return self
        p, _ = self.to_ztpoly()
        g = 0
        for c in p:
            for x in c:
                g = gcd(g, x)
        out = BiPoly([[x // g for x in c] for c in p], self.names)
        if out.coeff(*out.leading_term()) < 0:
            out = -out
        return out

    def divexact(self, other: "BiPoly") -> "BiPoly":
        q, r = bipoly_divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact bivariate division")
        return q

    # output ---------------------------------------------------------------

    def to_str(self) -> str:
        tn, mn = self.names
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            for j in range(len(self.coeffs[i]) - 1, -1, -1):
                c = self.coeffs[i][j]
                if c != 0:
                    mono = "*".join(m for m in (_monomial(tn, i), _monomial(mn, j)) if m)
                    terms.append((c, mono))
        return _render(terms)

    __str__ = to_str

    def to_json(self) -> list:
        return [[json_num(c) for c in r] for r in self.coeffs]


def bipoly_divmod(a: BiPoly, b: BiPoly) -> tuple[BiPoly, BiPoly]:
    """Division in Q[t, mu] using graded-lex (t > mu) order; exact when b | a."""
    if b.is_zero():
        raise ZeroDivisionError("polynomial division by zero")
    key = lambda e: (e[0] + e[1], e[0])  # noqa: E731
    rem = dict(a.terms())
    bt = b.terms()
    lt = b.leading_term()
    lc = Fraction(bt[lt])
    quo: dict = {}
    out_rem: dict = {}
    while rem:
        e = max(rem, key=key)
        c = rem[e]
        if e[0] >= lt[0] and e[1] >= lt[1]:
            s = (e[0] - lt[0], e[1] - lt[1])
            f = c / lc
            quo[s] = quo.get(s, 0) + f
            for (i, j), d in bt.items():
                k = (i + s[0], j + s[1])
                v = rem.get(k, 0) - f * d
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        else:
            out_rem[e] = c
            del rem[e]
    return BiPoly.from_dict(quo, a.names), BiPoly.from_dict(out_rem, a.names)


def gcd_bipoly(a: BiPoly, b: BiPoly) -> BiPoly:
    """GCD in Q[t, mu]: primitive, positive graded-lex leading coefficient.

    Computed as content gcd in Q[mu] times the primitive-PRS gcd over Q(mu)[t].
    """
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    pa, _ = a.to_ztpoly()
    pb, _ = b.to_ztpoly()
    g = zp.tzgcd(pa, pb)
    return BiPoly.from_ztpoly(g, a.names).primitive()
