"""Degree-similarity: is there one invertible M with A1 M = M A2 and D1 M = M D2?

The solution space of the two linear intertwining equations is computed
exactly.  The D-equation forces M to be block diagonal along the degree
partitions, so only those blocks are unknowns.  The remaining question is
whether that space contains an invertible matrix, i.e. whether the generic
determinant, a polynomial in the basis coefficients, vanishes identically.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, log2

from .algebra.linalg import det_rational, matmul, nullspace, rank
from .algebra.poly import json_num
from .graph import Graph, GraphError, complement, degree_partition, is_connected

YES = "YES"
NO = "NO"
NO_PROBABILISTIC = "NO_PROBABILISTIC"

SYMBOLIC_THRESHOLD = 6
ROUNDS = 40
SAMPLE_BITS = 60
LATTICE_CAP = 200_000


@dataclass(frozen=True)
class SimilaritySpace:
    """Basis of {M : A1 M = M A2, D1 M = M D2}; rows follow g1, columns g2."""

    n: int
    basis: tuple
    parts1: tuple = ()
    parts2: tuple = ()

    @property
    def dim(self) -> int:
        return len(self.basis)

    def combine(self, coeffs) -> list[list]:
        out = [[0] * self.n for _ in range(self.n)]
        for c, m in zip(coeffs, self.basis):
            if c:
                for i, row in enumerate(m):
                    for j, x in enumerate(row):
                        if x:
                            out[i][j] += c * x
        return out


@dataclass
class DsDecision:
    verdict: str
    basis_dim: int
    method: str
    seed: int
    witness: list | None = None
    error_bound: str | None = None
    error_bound_log2: float | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "basis_dim": self.basis_dim,
            "method": self.method,
            "error_bound": self.error_bound,
            "error_bound_log2": self.error_bound_log2,
            "witness": None if self.witness is None else [[json_num(x) for x in r] for r in self.witness],
            "seed": self.seed,
        }


def similarity_space(g1: Graph, g2: Graph) -> SimilaritySpace:
    """Blockwise solution of the intertwining equations.

    Unknowns are M[w][v] with deg1(w) = deg2(v).  For every pair (u, v) the
    (u, v) entry of A1 M - M A2 gives one sparse equation.
    """
    n = g1.n
    if g2.n != n or g1.degree_sequence() != g2.degree_sequence():
        return SimilaritySpace(n, ())
    p1, p2 = degree_partition(g1), degree_partition(g2)
    d1, d2 = g1.degrees(), g2.degrees()
    var = {}
    for a, b in zip(p1.parts, p2.parts):
        for w in a:
            for v in b:
                var[(w, v)] = len(var)
    rows = []
    for u in range(n):
        for v in range(n):
            eq: dict[int, int] = {}
            for w in g1.neighbors(u):
                if d1[w] == d2[v]:
                    k = var[(w, v)]
                    eq[k] = eq.get(k, 0) + 1
            for x in g2.neighbors(v):
                if d1[u] == d2[x]:
                    k = var[(u, x)]
                    eq[k] = eq.get(k, 0) - 1
            eq = {k: c for k, c in eq.items() if c}
            if eq:
                rows.append(eq)
    basis = []
    for vec in nullspace(rows, len(var)):
        m = [[0] * n for _ in range(n)]
        for (w, v), k in var.items():
            m[w][v] = vec[k]
        basis.append(m)
    return SimilaritySpace(n, tuple(basis), p1.parts, p2.parts)


def similarity_space_full(g1: Graph, g2: Graph) -> SimilaritySpace:
    """Same space from all n^2 unknowns and both full equation sets (a cross-check)."""
    n = g1.n
    if g2.n != n:
        return SimilaritySpace(n, ())
    a1, a2 = g1.adjacency(), g2.adjacency()
    d1, d2 = g1.degrees(), g2.degrees()
    idx = lambda i, j: i * n + j  # noqa: E731
    rows = []
    for u in range(n):
        for v in range(n):
            eq: dict[int, int] = {}
            for w in range(n):
                if a1[u][w]:
                    eq[idx(w, v)] = eq.get(idx(w, v), 0) + 1
                if a2[w][v]:
                    eq[idx(u, w)] = eq.get(idx(u, w), 0) - 1
            eq = {k: c for k, c in eq.items() if c}
            if eq:
                rows.append(eq)
            if d1[u] != d2[v]:
                rows.append({idx(u, v): d1[u] - d2[v]})
    basis = [[vec[i * n : (i + 1) * n] for i in range(n)] for vec in nullspace(rows, n * n)]
    return SimilaritySpace(n, tuple(basis))


def verify_witness(g1: Graph, g2: Graph, m) -> bool:
    """M invertible with A1 M = M A2 and D1 M = M D2, checked exactly."""
    if det_rational(m) == 0:
        return False
    a1, a2 = g1.adjacency(), g2.adjacency()
    dd1, dd2 = g1.degree_matrix(), g2.degree_matrix()
    return matmul(a1, m) == matmul(m, a2) and matmul(dd1, m) == matmul(m, dd2)


def _blocks(space: SimilaritySpace):
    for a, b in zip(space.parts1, space.parts2):
        mats = [[[m[i][j] for j in b] for i in a] for m in space.basis]
        yield a, b, mats


def _block_det(space: SimilaritySpace, coeffs) -> int | Fraction:
    total = 1
    for _, _, mats in _blocks(space):
        s = len(mats[0])
        blk = [[sum(c * mm[i][j] for c, mm in zip(coeffs, mats) if c) for j in range(s)] for i in range(s)]
        total *= det_rational(blk)
        if total == 0:
            return 0
    return total


def _independent(mats: list) -> list:
    """A maximal linearly independent subfamily of the given matrices."""
    chosen: list = []
    flat: list = []
    for m in mats:
        vec = [x for row in m for x in row]
        if rank(flat + [vec]) > len(flat):
            flat.append(vec)
            chosen.append(m)
    return chosen


def _simplex_points(r: int, s: int):
    """All a in N^r with sum(a) <= s; unisolvent for polynomials of total degree <= s."""
    if r == 0:
        yield ()
        return
    for first in range(s + 1):
        for rest in _simplex_points(r - 1, s - first):
            yield (first,) + rest


def _block_identically_singular(mats: list) -> bool | None:
    """Does det(sum c_j B_j) vanish for all c?  None if the lattice is too large."""
    red = _independent(mats)
    s = len(mats[0])
    r = len(red)
    if r == 0:
        return True
    if comb(s + r, r) > LATTICE_CAP:
        return None
    for a in _simplex_points(r, s):
        if not any(a):
            continue
        blk = [[sum(c * mm[i][j] for c, mm in zip(a, red) if c) for j in range(s)] for i in range(s)]
        if det_rational(blk) != 0:
            return False
    return True


def degree_similar(
    g1: Graph,
    g2: Graph,
    seed: int = 0,
    symbolic_threshold: int = SYMBOLIC_THRESHOLD,
    rounds: int = ROUNDS,
    sample_bits: int = SAMPLE_BITS,
) -> DsDecision:
    """Decide degree-similarity; YES carries an exactly verified witness."""
    rng = random.Random(seed)
    space = similarity_space(g1, g2)
    k = space.dim
    if k == 0:
        return DsDecision(NO, 0, "symbolic-determinant", seed, extra={"reason": "empty similarity space"})

    def found(coeffs, method):
        m = space.combine(coeffs)
        if not verify_witness(g1, g2, m):
            raise AssertionError("witness failed exact verification")
        return DsDecision(YES, k, method, seed, witness=m)

    # cheap attempts first: a generic point is invertible whenever anything is
    for _ in range(3):
        coeffs = [rng.randint(1, 1 << 20) for _ in range(k)]
        if _block_det(space, coeffs) != 0:
            return found(coeffs, "random-point")

    symbolic = None
    if k <= symbolic_threshold:
        symbolic = True
        for _, _, mats in _blocks(space):
            res = _block_identically_singular(mats)
            if res is None:
                symbolic = None
                break
            if res:
                return DsDecision(NO, k, "symbolic-determinant", seed)
        if symbolic:
            # no block is identically singular, so their product is a nonzero
            # polynomial and random points find a nonroot almost surely
            while True:
                coeffs = [rng.randint(1, 1 << sample_bits) for _ in range(k)]
                if _block_det(space, coeffs) != 0:
                    return found(coeffs, "symbolic-determinant")

    top = 1 << sample_bits
    for _ in range(rounds):
        coeffs = [rng.randint(1, top) for _ in range(k)]
        if _block_det(space, coeffs) != 0:
            return found(coeffs, "randomized")
    n = max(g1.n, 1)
    return DsDecision(
        NO_PROBABILISTIC,
        k,
        "randomized",
        seed,
        error_bound=f"({n}/2^{sample_bits})^{rounds}",
        error_bound_log2=rounds * (log2(n) - sample_bits),
    )


def normalize_row_sums(
    g1: Graph, g2: Graph, witness=None, space: SimilaritySpace | None = None, seed: int = 0, tries: int = 40
):
    """A witness with M 1 = M^T 1 = 1, or None if none turns up.

    For connected g1, L1 M 1 = M L2 1 = 0 forces M 1 = c 1, and likewise for
    M^T; dividing by c != 0 normalizes.  A witness with c = 0 is replaced by
    other points of the similarity space.
    """
    if not is_connected(g1):
        raise GraphError("row-sum normalization requires g1 to be connected")
    space = space or similarity_space(g1, g2)
    rng = random.Random(seed)
    candidates = [witness] if witness is not None else []
    for _ in range(tries):
        if candidates:
            m = candidates.pop()
        elif space.dim:
            m = space.combine([rng.randint(-(1 << 20), 1 << 20) for _ in range(space.dim)])
        else:
            return None
        c = sum(m[0])
        if c == 0:
            continue
        norm = [[Fraction(x, 1) / c for x in row] for row in m]
        norm = [[x.numerator if x.denominator == 1 else x for x in row] for row in norm]
        if all(sum(row) == 1 for row in norm) and all(sum(col) == 1 for col in zip(*norm)):
            if verify_witness(g1, g2, norm):
                return norm
    return None


def complement_transfer_check(g1: Graph, g2: Graph, m) -> bool:
    """For a row-sum-normalized witness, does M also conjugate the complements?"""
    if not (all(sum(r) == 1 for r in m) and all(sum(c) == 1 for c in zip(*m))):
        raise ValueError("witness is not row/column-sum normalized")
    return verify_witness(complement(g1), complement(g2), m)


def word_trace_test(g1: Graph, g2: Graph, max_len: int) -> bool:
    """tr w(A1, D1) = tr w(A2, D2) for every word w of length 1..max_len.

    A necessary condition for orthogonal degree-similarity (and for plain
    degree-similarity); never a proof of it.
    """
    if max_len < 1:
        raise ValueError("word length bound must be at least 1")
    if g1.n != g2.n:
        return False
    letters1 = (g1.adjacency(), g1.degree_matrix())
    letters2 = (g2.adjacency(), g2.degree_matrix())
    stack = [(letters1[i], letters2[i], 1) for i in (0, 1)]
    while stack:
        p1, p2, length = stack.pop()
        if sum(p1[i][i] for i in range(g1.n)) != sum(p2[i][i] for i in range(g2.n)):
            return False
        if length < max_len:
            for i in (0, 1):
                stack.append((matmul(p1, letters1[i]), matmul(p2, letters2[i]), length + 1))
    return True


def enumerate_words(max_len: int):
    """Words over {A, D} of length 1..max_len, shortest first (for reporting)."""
    for length in range(1, max_len + 1):
        for w in product("AD", repeat=length):
            yield "".join(w)
