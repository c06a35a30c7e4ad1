"""Strongly regular and 1-walk-regular graphs, cliques, and mu-polynomial sweeps over clique deletions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .algebra import det_rational, inverse, matmul
from .algebra.linalg import identity
from .canon import certificate
from .graph import Graph, GraphError, complement, delete_edges
from .spectra import mu_polynomial


class PreconditionError(GraphError):
    """The input graph does not satisfy what an operation requires of it."""


@dataclass(frozen=True)
class SrgParams:
    n: int
    d: int
    a: int
    c: int

    def __post_init__(self):
        if self.d * (self.d - self.a - 1) != (self.n - self.d - 1) * self.c:
            raise ValueError(f"infeasible parameters {self}: d(d-a-1) != (n-d-1)c")

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "a": self.a, "c": self.c}


def srg_params(g: Graph) -> SrgParams | None:
    """Parameters (n, d; a, c) when A^2 = dI + aA + c(J - I - A), else None.

    For complete and empty graphs the unconstrained parameter is reported as 0.
    """
    n = g.n
    if n == 0:
        return None
    deg = g.degrees()
    d = deg[0]
    if any(x != d for x in deg):
        return None
    common = lambda u, v: (g.nbrs[u] & g.nbrs[v]).bit_count()  # noqa: E731
    a = c = None
    for u in range(n):
        for v in range(u + 1, n):
            k = common(u, v)
            if g.has_edge(u, v):
                if a is None:
                    a = k
                elif k != a:
                    return None
            else:
                if c is None:
                    c = k
                elif k != c:
                    return None
    return SrgParams(n, d, a or 0, c or 0)


def is_one_walk_regular(g: Graph) -> bool:
    """A^k has constant diagonal and is constant on edges for every k < n."""
    n = g.n
    if n == 0:
        return True
    adj = g.adjacency()
    edges = g.edges()
    power = identity(n)
    for _ in range(n):
        if len({power[i][i] for i in range(n)}) > 1:
            return False
        if len({power[u][v] for u, v in edges}) > 1:
            return False
        power = matmul(power, adj)
    return True


def enumerate_cliques(g: Graph, s: int) -> list[tuple[int, ...]]:
    """All cliques on exactly s vertices, in lexicographic order."""
    if s < 1:
        raise ValueError("clique size must be at least 1")
    out: list[tuple[int, ...]] = []

    def extend(clique: list[int], cand: int) -> None:
        if len(clique) == s:
            out.append(tuple(clique))
            return
        if cand.bit_count() < s - len(clique):
            return
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            clique.append(v)
            # only later vertices, so each clique is produced once
            extend(clique, cand & g.nbrs[v])
            clique.pop()

    extend([], (1 << g.n) - 1)
    return out


def delete_h_in_clique(g: Graph, h: Graph, clique: Sequence[int], embedding: Sequence[int]) -> Graph:
    """Delete the image of each edge of h, where h's vertex i goes to ``embedding[i]``."""
    if h.n != len(clique) or len(embedding) != h.n:
        raise GraphError(f"h has {h.n} vertices but the clique has {len(clique)}")
    if sorted(embedding) != sorted(clique) or len(set(clique)) != len(clique):
        raise GraphError("embedding must be a bijection onto the clique")
    cl = list(clique)
    for i, u in enumerate(cl):
        for v in cl[i + 1 :]:
            if not g.has_edge(u, v):
                raise GraphError(f"{sorted(cl)} is not a clique: ({u}, {v}) missing")
    return delete_edges(g, [(embedding[a], embedding[b]) for a, b in h.edges()])


def _placements(h: Graph, clique: tuple[int, ...]):
    """One embedding per distinct edge image (the quotient by Aut(h))."""
    seen = set()
    for emb in permutations(clique):
        image = frozenset(frozenset((emb[a], emb[b])) for a, b in h.edges())
        if image not in seen:
            seen.add(image)
            yield emb


@dataclass
class SweepReport:
    checked: int
    psi_distinct: int
    iso_classes: int
    complement_psi_distinct: int | None = None

    @property
    def all_equal(self) -> bool:
        return self.psi_distinct <= 1 and (self.complement_psi_distinct or 0) <= 1

    def to_json(self) -> dict:
        out = {"psi_distinct": self.psi_distinct, "iso_classes": self.iso_classes, "checked": self.checked}
        if self.complement_psi_distinct is not None:
            out["complement_psi_distinct"] = self.complement_psi_distinct
        return out


def deletion_family(g: Graph, h: Graph, s: int) -> list[Graph]:
    """Every graph obtained by deleting a copy of h inside an s-clique of g."""
    if h.n != s:
        raise GraphError(f"h has {h.n} vertices, clique size is {s}")
    return [delete_h_in_clique(g, h, c, emb) for c in enumerate_cliques(g, s) for emb in _placements(h, c)]


def sweep_mu_equal(g: Graph, h: Graph, s: int, with_complement: bool = False, check: bool = True) -> SweepReport:
    """Compare mu-polynomials (and optionally those of complements) across all deletions."""
    if check and not is_one_walk_regular(g):
        raise PreconditionError("graph is not 1-walk regular")
    if with_complement and srg_params(g) is None:
        raise PreconditionError("complement comparison needs a strongly regular graph")
    family = deletion_family(g, h, s)
    psis = {mu_polynomial(x) for x in family}
    certs = {certificate(x) for x in family}
    comp = {mu_polynomial(complement(x)) for x in family} if with_complement else None
    return SweepReport(len(family), len(psis), len(certs), None if comp is None else len(comp))


# --------------------------------------------------------------------------
# rank-one update and determinant identities


@dataclass
class ShermanMorrisonResult:
    singular: bool
    inverse: list | None
    denominator: Fraction | int


def sherman_morrison_check(b: Sequence[Sequence], u: Sequence, v: Sequence) -> ShermanMorrisonResult:
    """Inverse of B + u v^T from B^-1, verified by multiplication."""
    n = len(b)
    try:
        binv = inverse(b)
    except ZeroDivisionError as exc:
        raise ValueError("B is singular") from exc
    bu = [sum(Fraction(binv[i][k]) * u[k] for k in range(n)) for i in range(n)]
    vb = [sum(v[k] * Fraction(binv[k][j]) for k in range(n)) for j in range(n)]
    denom = 1 + sum(v[i] * bu[i] for i in range(n))
    if denom == 0:
        return ShermanMorrisonResult(True, None, 0)
    inv = [[binv[i][j] - bu[i] * vb[j] / denom for j in range(n)] for i in range(n)]
    updated = [[b[i][j] + u[i] * v[j] for j in range(n)] for i in range(n)]
    if matmul(updated, inv) != identity(n):
        raise AssertionError("rank-one update formula failed verification")
    return ShermanMorrisonResult(False, inv, denom)


def det_commutation_check(c: Sequence[Sequence], d: Sequence[Sequence]) -> bool:
    """det(I_m - CD) == det(I_n - DC), both sides computed directly."""
    m = len(c)
    n = len(d)
    if any(len(r) != n for r in c) or any(len(r) != m for r in d):
        raise ValueError(f"shapes do not conform: C is {m}x{len(c[0]) if c else 0}, D is {n}x{len(d[0]) if d else 0}")
    cd, dc = matmul(c, d), matmul(d, c)
    left = det_rational([[(i == j) - cd[i][j] for j in range(m)] for i in range(m)])
    right = det_rational([[(i == j) - dc[i][j] for j in range(n)] for i in range(n)])
    return left == right
