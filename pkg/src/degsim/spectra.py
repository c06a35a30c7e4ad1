"""Characteristic, alpha- and mu-polynomials of graphs and the cospectrality checks built on them.

psi(G, t, mu) = det(tI - A + mu D) and phi(G, t, alpha) = det(tI - A - alpha J)
are computed by grid evaluation and interpolation.  The single-matrix
characteristic polynomials (A, L, Q and D^-1 A) are computed separately from
their own matrices, so the specialisation identities relating them to psi
are genuine cross-checks rather than tautologies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .algebra import BiPoly, PolyMatrix, SNFResult, UniPoly, char_poly_rational, snf
from .algebra.linalg import det_by_interpolation
from .graph import Graph, complement, is_connected, laplacian
from .similarity import degree_similar

MODES = ("A", "L", "Q", "N", "A-and-complement", "alpha", "mu")


class IsolatedVertexError(ValueError):
    """The normalized Laplacian is undefined for graphs with isolated vertices."""


class ImplicationViolation(AssertionError):
    """An implication that must hold between spectral properties failed."""


@lru_cache(maxsize=4096)
def mu_polynomial(g: Graph) -> BiPoly:
    """det(tI - A + mu D) as a polynomial in (t, mu)."""
    n = g.n
    adj = g.adjacency()
    deg = g.degrees()

    def evaluate(t, mu):
        return [[t + mu * deg[i] if i == j else -adj[i][j] for j in range(n)] for i in range(n)]

    return det_by_interpolation(evaluate, n, n)


@lru_cache(maxsize=4096)
def alpha_polynomial(g: Graph) -> BiPoly:
    """det(tI - A - alpha J) in (t, alpha).

    J has rank one, so the result is at most linear in alpha; the
    interpolation is told so, and its off-grid check would reject anything
    of higher degree.
    """
    n = g.n
    adj = g.adjacency()

    def evaluate(t, a):
        return [[(t if i == j else 0) - adj[i][j] - a for j in range(n)] for i in range(n)]

    return det_by_interpolation(evaluate, n, 1, names=("t", "alpha"))


def char_a(g: Graph) -> UniPoly:
    return char_poly_rational(g.adjacency())


def char_l(g: Graph) -> UniPoly:
    return char_poly_rational(laplacian(g))


def char_q(g: Graph) -> UniPoly:
    deg = g.degrees()
    return char_poly_rational([[deg[i] if i == j else x for j, x in enumerate(row)] for i, row in enumerate(g.adjacency())])


def char_n(g: Graph) -> UniPoly:
    """Characteristic polynomial of D^-1 A, which is similar to the normalized adjacency.

    (The normalized Laplacian I - D^-1/2 A D^-1/2 has the same spectrum up to
    the shift s -> 1 - s, so equality of either is equality of both.)
    """
    deg = g.degrees()
    if any(d == 0 for d in deg):
        raise IsolatedVertexError("normalized spectra need a graph without isolated vertices")
    return char_poly_rational([[Fraction(x, deg[i]) for x in row] for i, row in enumerate(g.adjacency())])


def lmu_matrix(g: Graph) -> PolyMatrix:
    """tI - L_mu(G) = tI - A + mu D as a matrix over Q(mu)[t]."""
    t, mu = BiPoly.t(), BiPoly.mu()
    deg = g.degrees()
    zero, minus_one = BiPoly(), BiPoly.const(-1)
    return PolyMatrix(
        [
            [t + mu * deg[i] if i == j else (minus_one if g.has_edge(i, j) else zero) for j in range(g.n)]
            for i in range(g.n)
        ]
    )


@lru_cache(maxsize=1024)
def lmu_snf(g: Graph) -> SNFResult:
    return snf(lmu_matrix(g))


@dataclass(frozen=True)
class SpectralProfile:
    charA: UniPoly
    charL: UniPoly
    charQ: UniPoly
    charN: UniPoly | None
    mu_poly: BiPoly
    alpha_poly: BiPoly
    charA_complement: UniPoly

    def to_json(self) -> dict:
        return {
            "charA": self.charA.to_json(),
            "charL": self.charL.to_json(),
            "charQ": self.charQ.to_json(),
            "charN": self.charN.to_json() if self.charN is not None else None,
            "mu_poly": self.mu_poly.to_json(),
            "alpha_poly": self.alpha_poly.to_json(),
            "charA_complement": self.charA_complement.to_json(),
        }


def profile(g: Graph) -> SpectralProfile:
    has_isolated = any(d == 0 for d in g.degrees())
    return SpectralProfile(
        charA=char_a(g),
        charL=char_l(g),
        charQ=char_q(g),
        charN=None if has_isolated else char_n(g),
        mu_poly=mu_polynomial(g),
        alpha_poly=alpha_polynomial(g),
        charA_complement=char_a(complement(g)),
    )


def cospectral(g1: Graph, g2: Graph, which: str) -> bool:
    if which not in MODES:
        raise ValueError(f"unknown mode {which!r}; choose from {', '.join(MODES)}")
    if g1.n != g2.n:
        return False
    if which == "A":
        return char_a(g1) == char_a(g2)
    if which == "L":
        return char_l(g1) == char_l(g2)
    if which == "Q":
        return char_q(g1) == char_q(g2)
    if which == "N":
        return char_n(g1) == char_n(g2)
    if which == "A-and-complement":
        return char_a(g1) == char_a(g2) and char_a(complement(g1)) == char_a(complement(g2))
    if which == "alpha":
        return alpha_polynomial(g1) == alpha_polynomial(g2)
    return mu_polynomial(g1) == mu_polynomial(g2)


def _alpha_char(g: Graph, a: int) -> UniPoly:
    return char_poly_rational([[x + a for x in row] for row in g.adjacency()])


def johnson_newman_audit(g1: Graph, g2: Graph) -> dict:
    """Truth values of the four equivalent statements about generalized spectra.

    (1) equal alpha-polynomials; (2) A + aJ cospectral for a = 1 and a = 2;
    (3) A-cospectral with A-cospectral complements; (4) is reported as the
    consequence of (3).  Raises ImplicationViolation if (1), (2), (3) disagree.
    """
    s1 = g1.n == g2.n and alpha_polynomial(g1) == alpha_polynomial(g2)
    s2 = g1.n == g2.n and all(_alpha_char(g1, a) == _alpha_char(g2, a) for a in (1, 2))
    s3 = cospectral(g1, g2, "A-and-complement")
    if not s1 == s2 == s3:
        raise ImplicationViolation(f"generalized-spectrum statements disagree: (1)={s1} (2)={s2} (3)={s3}")
    return {"all_alpha": s1, "two_alpha": s2, "A_and_complement": s3, "orthogonal_conjugacy": s3}


def implication_audit(g1: Graph, g2: Graph, ds_verdict: str | None = None, seed: int = 0) -> dict:
    """Statuses from degree-similarity down to the weakest cospectrality, plus violations.

    ``ds_verdict`` may be supplied (YES / NO / NO_PROBABILISTIC) to avoid
    recomputing it.  Checked implications: degree-similar => same SNF =>
    L_mu-cospectral => cospectral for A, L, Q, N; degree-similar with one
    graph connected => A_alpha-cospectral; A_alpha <=> (A, A^c).
    """
    if ds_verdict is None:
        ds_verdict = degree_similar(g1, g2, seed=seed).verdict
    ds = ds_verdict == "YES"
    same_n = g1.n == g2.n
    mu_eq = same_n and mu_polynomial(g1) == mu_polynomial(g2)
    snf_eq = same_n and (mu_eq or ds) and lmu_snf(g1) == lmu_snf(g2)
    n_ok = all(g.degrees() and min(g.degrees()) > 0 for g in (g1, g2))
    alqn = same_n and all(cospectral(g1, g2, m) for m in ("A", "L", "Q")) and (not n_ok or cospectral(g1, g2, "N"))
    alpha_eq = same_n and alpha_polynomial(g1) == alpha_polynomial(g2)
    ac_eq = cospectral(g1, g2, "A-and-complement")

    violations = []
    if ds and not snf_eq:
        violations.append("degree-similar but SNFs differ")
    if snf_eq and not mu_eq:
        violations.append("equal SNFs but different mu-polynomials")
    if mu_eq and not alqn:
        violations.append("equal mu-polynomials but not (A,L,Q,N)-cospectral")
    if ds and (is_connected(g1) or is_connected(g2)) and not alpha_eq:
        violations.append("degree-similar and connected but not A_alpha-cospectral")
    if alpha_eq != ac_eq:
        violations.append("A_alpha-cospectrality differs from (A,A^c)-cospectrality")
    return {
        "degree_similar": ds_verdict,
        "snf_equal": snf_eq,
        "mu_cospectral": mu_eq,
        "ALQN_cospectral": alqn,
        "N_checked": n_ok,
        "alpha_cospectral": alpha_eq,
        "A_complement_cospectral": ac_eq,
        "violations": violations,
    }
