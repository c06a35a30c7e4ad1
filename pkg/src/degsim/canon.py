"""Canonical labelling by equitable refinement and individualisation.

The search tree is the usual one: refine the unit partition to an equitable
ordered partition, individualise each vertex of the first non-singleton cell
in turn, refine again, and recurse.  Each discrete leaf gives a relabelled
graph; the lexicographically smallest graph6 string among the leaves is the
certificate.  Automorphisms found along the way (two leaves with the same
string) prune sibling branches lying in one orbit of the pointwise
stabiliser of the current path.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .graph import Graph, GraphError, emit_graph6

DEFAULT_MAX_N = 64


@dataclass(frozen=True)
class CanonicalForm:
    """``labeling[v]`` is the canonical position of vertex v."""

    labeling: tuple[int, ...]
    certificate: str

    def graph(self, g: Graph) -> Graph:
        return g.relabel(self.labeling)


def refine(g: Graph, cells: list[list[int]]) -> list[list[int]]:
    """Coarsest equitable refinement of an ordered partition.

    A cell is split by the number of neighbours its vertices have in a
    splitter cell; fragments take the original cell's place in increasing
    order of that count, so the result depends only on the isomorphism type
    of (graph, ordered partition).
    """
    nbrs = g.nbrs
    cells = [list(c) for c in cells]
    w = 0
    while w < len(cells):
        mask = 0
        for v in cells[w]:
            mask |= 1 << v
        out = []
        split = False
        for c in cells:
            if len(c) == 1:
                out.append(c)
                continue
            groups: dict[int, list[int]] = {}
            for v in c:
                groups.setdefault((nbrs[v] & mask).bit_count(), []).append(v)
            if len(groups) == 1:
                out.append(c)
            else:
                split = True
                out.extend(groups[k] for k in sorted(groups))
        if split:
            cells = out
            w = 0
        else:
            w += 1
    return cells


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.best: str | None = None
        self.best_pos: list[int] | None = None
        self.autos: list[list[int]] = []

    def leaf(self, cells: list[list[int]]) -> None:
        pos = [0] * self.g.n
        for i, c in enumerate(cells):
            pos[c[0]] = i
        cert = emit_graph6(self.g.relabel(pos))
        if self.best is None or cert < self.best:
            self.best, self.best_pos = cert, pos
        elif cert == self.best:
            inv = [0] * self.g.n
            for v, p in enumerate(self.best_pos):
                inv[p] = v
            sigma = [inv[pos[v]] for v in range(self.g.n)]
            if any(sigma[v] != v for v in range(self.g.n)):
                self.autos.append(sigma)

    def orbit_rep(self, fixed: list[int]) -> list[int]:
        parent = list(range(self.g.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.autos:
            if all(s[v] == v for v in fixed):
                for v in range(self.g.n):
                    a, b = find(v), find(s[v])
                    if a != b:
                        parent[max(a, b)] = min(a, b)
        return [find(v) for v in range(self.g.n)]

    def run(self, cells: list[list[int]], fixed: list[int]) -> None:
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            self.leaf(cells)
            return
        tried: list[int] = []
        for v in sorted(cells[target]):
            if tried and self.autos:
                rep = self.orbit_rep(fixed)
                if any(rep[v] == rep[u] for u in tried):
                    continue
            tried.append(v)
            rest = [u for u in cells[target] if u != v]
            child = cells[:target] + [[v], rest] + cells[target + 1 :]
            self.run(refine(self.g, child), fixed + [v])


def canonical_form(g: Graph, max_n: int = DEFAULT_MAX_N) -> CanonicalForm:
    if g.n > max_n:
        raise GraphError(f"canonical labelling limited to {max_n} vertices, got {g.n}")
    if g.n == 0:
        return CanonicalForm((), emit_graph6(g))
    search = _Search(g)
    search.run(refine(g, [list(range(g.n))]), [])
    return CanonicalForm(tuple(search.best_pos), search.best)


def certificate(g: Graph) -> str:
    return canonical_form(g).certificate


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n or g.degree_sequence() != h.degree_sequence():
        return False
    return certificate(g) == certificate(h)


def canonical_graph(g: Graph) -> Graph:
    return canonical_form(g).graph(g)


# --------------------------------------------------------------------------
# exhaustive generation


def graphs(n: int) -> list[Graph]:
    """One canonical representative per isomorphism class on n vertices.

    Built by adding a vertex with every possible neighbourhood to each class
    on n-1 vertices and keeping the distinct certificates.
    """
    if n == 0:
        return [Graph(0)]
    seen: dict[str, Graph] = {}
    for h in graphs(n - 1):
        for mask in range(1 << (n - 1)):
            masks = list(h.nbrs) + [mask]
            for u in range(n - 1):
                if (mask >> u) & 1:
                    masks[u] |= 1 << (n - 1)
            cand = Graph(n, masks)
            cf = canonical_form(cand)
            if cf.certificate not in seen:
                seen[cf.certificate] = cf.graph(cand)
    return [seen[k] for k in sorted(seen)]


def iter_labelled_graphs(n: int) -> Iterator[Graph]:
    """Every labelled graph on n vertices (2^(n choose 2) of them)."""
    pairs = [(i, j) for j in range(n) for i in range(j)]
    for bits in range(1 << len(pairs)):
        yield Graph.from_edges(n, (p for k, p in enumerate(pairs) if (bits >> k) & 1))
