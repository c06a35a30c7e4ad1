"""Simple undirected graphs, interchange formats and combinatorial operations.

A ``Graph`` is immutable: ``n`` vertices labelled 0..n-1 and, for each
vertex, an integer bitmask of its neighbours.  Everything else in the
package reads graphs through this type.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra.linalg import det_integer


class GraphError(ValueError):
    """Invalid graph operation (bad vertex, missing edge, overlapping sets...)."""


class ParseError(ValueError):
    """Malformed graph text; ``offset`` is the 0-based byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class Graph:
    __slots__ = ("n", "nbrs", "_hash")

    def __init__(self, n: int, nbrs: Sequence[int] | None = None):
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        masks = tuple(nbrs) if nbrs is not None else (0,) * n
        if len(masks) != n:
            raise GraphError(f"expected {n} neighbour masks, got {len(masks)}")
        full = (1 << n) - 1
        for v, m in enumerate(masks):
            if m & ~full or (m >> v) & 1:
                raise GraphError(f"vertex {v}: neighbour mask out of range or has a loop")
            rest = m
            while rest:
                low = rest & -rest
                u = low.bit_length() - 1
                if not (masks[u] >> v) & 1:
                    raise GraphError(f"adjacency not symmetric between {v} and {u}")
                rest ^= low
        self.n = n
        self.nbrs = masks
        self._hash = None

    # construction ---------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        masks = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) has a vertex outside 0..{n - 1}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return cls(n, masks)

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]]) -> "Graph":
        n = len(rows)
        return cls.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if rows[i][j]))

    # inspection -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.nbrs == other.nbrs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.nbrs))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.nbrs[u] >> v) & 1)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.nbrs[v])

    def degree(self, v: int) -> int:
        return self.nbrs[v].bit_count()

    def degrees(self) -> list[int]:
        return [m.bit_count() for m in self.nbrs]

    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted(self.degrees(), reverse=True))

    def num_edges(self) -> int:
        return sum(self.degrees()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.nbrs[u]) if u < v]

    def adjacency(self) -> list[list[int]]:
        return [[(m >> j) & 1 for j in range(self.n)] for m in self.nbrs]

    def degree_matrix(self) -> list[list[int]]:
        d = self.degrees()
        return [[d[i] if i == j else 0 for j in range(self.n)] for i in range(self.n)]

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph in which old vertex v becomes perm[v]."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))


def _bits(m: int) -> list[int]:
    out = []
    while m:
        low = m & -m
        out.append(low.bit_length() - 1)
        m ^= low
    return out


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise GraphError(f"root {self.root} outside 0..{self.graph.n - 1}")


@dataclass(frozen=True)
class DegreePartition:
    """Vertex classes of equal degree, in strictly decreasing degree order."""

    parts: tuple[tuple[int, ...], ...]
    degrees: tuple[int, ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def part_of(self) -> dict[int, int]:
        return {v: i for i, p in enumerate(self.parts) for v in p}


# --------------------------------------------------------------------------
# graph6


def emit_graph6(g: Graph) -> str:
    n = g.n
    if n < 63:
        head = [n + 63]
    elif n < 258048:
        head = [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    else:
        head = [126, 126] + [63 + (n >> s & 63) for s in (30, 24, 18, 12, 6, 0)]
    bits = []
    for j in range(1, n):
        m = g.nbrs[j]
        for i in range(j):
            bits.append((m >> i) & 1)
    bits += [0] * (-len(bits) % 6)
    body = [63 + int("".join(map(str, bits[k : k + 6])), 2) for k in range(0, len(bits), 6)]
    return bytes(head + body).decode("ascii")


def parse_graph6(text: str) -> Graph:
    s = text.rstrip("\r\n")
    base = 0
    if s.startswith(">>graph6<<"):
        base = 10
        s = s[10:]
    for k, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"character {ch!r} outside the graph6 range 63..126", base + k)
    data = s.encode("ascii")
    if not data:
        raise ParseError("empty graph6 string", base)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated 8-byte vertex-count header", base + len(data))
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        pos = 8
    else:
        if len(data) < 4:
            raise ParseError("truncated 4-byte vertex-count header", base + len(data))
        n = 0
        for b in data[1:4]:
            if b == 126:
                raise ParseError("malformed vertex-count header", base + 1)
            n = (n << 6) | (b - 63)
        pos = 4
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    payload = data[pos:]
    if len(payload) < need:
        raise ParseError(f"truncated payload: need {need} bytes, have {len(payload)}", base + len(data))
    if len(payload) > need:
        raise ParseError("trailing bytes after payload", base + pos + need)
    masks = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = payload[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                masks[i] |= 1 << j
                masks[j] |= 1 << i
            k += 1
    if need and nbits % 6:
        pad = (payload[-1] - 63) & ((1 << (6 - nbits % 6)) - 1)
        if pad:
            raise ParseError("nonzero padding bits", base + pos + need - 1)
    return Graph(n, masks)


# --------------------------------------------------------------------------
# edge lists


def parse_edge_list(text: str) -> tuple[str | None, Graph]:
    """Read the edge-list format.

    Lines: an optional leading name line (a single token that is not a
    number), an optional ``n <count>`` line, ``#`` comments, and ``u v``
    pairs with 0-based vertices.  Without an ``n`` line the vertex count is
    one more than the largest vertex mentioned.
    """
    name = None
    n = None
    edges = []
    offset = 0
    first = True
    for line in text.splitlines(keepends=True):
        stripped = line.split("#", 1)[0].strip()
        here = offset
        offset += len(line.encode())
        if not stripped:
            continue
        tok = stripped.split()
        if first and len(tok) == 1 and not tok[0].lstrip("-").isdigit():
            name = tok[0]
            first = False
            continue
        first = False
        if tok[0] == "n":
            if len(tok) != 2 or not tok[1].isdigit():
                raise ParseError("expected 'n <count>'", here)
            n = int(tok[1])
            continue
        if len(tok) != 2 or not all(t.isdigit() for t in tok):
            raise ParseError(f"expected two vertex numbers, got {stripped!r}", here)
        edges.append((int(tok[0]), int(tok[1])))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=-1)
    try:
        return name, Graph.from_edges(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc), 0) from exc


def emit_edge_list(g: Graph, name: str | None = None) -> str:
    lines = [name] if name else []
    lines.append(f"n {g.n}")
    lines += [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


def read_graph(text: str) -> Graph:
    """Auto-detect graph6 versus edge-list text.

    A first byte that is a digit or ``#``, or whitespace inside the first
    line, means edge list.  Otherwise the first line is read as graph6; if
    that fails and more lines follow, the first line was a name header.
    """
    first_line = text.split("\n", 1)[0].rstrip("\r")
    if not first_line.strip():
        return parse_edge_list(text)[1]
    if first_line[0].isdigit() or first_line[0] == "#" or any(c.isspace() for c in first_line):
        return parse_edge_list(text)[1]
    try:
        return parse_graph6(first_line)
    except ParseError:
        if len([ln for ln in text.splitlines() if ln.strip()]) > 1:
            return parse_edge_list(text)[1]
        raise


# --------------------------------------------------------------------------
# operations


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~m & ~(1 << v) for v, m in enumerate(g.nbrs)))


def _check_vertices(g: Graph, vs: Iterable[int]) -> list[int]:
    out = sorted(set(vs))
    for v in out:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} outside 0..{g.n - 1}")
    return out


def induced_subgraph(g: Graph, s: Iterable[int]) -> Graph:
    """Subgraph on ``s``, relabelled 0..|s|-1 in increasing vertex order."""
    vs = _check_vertices(g, s)
    pos = {v: i for i, v in enumerate(vs)}
    return Graph.from_edges(len(vs), ((pos[u], pos[v]) for u, v in g.edges() if u in pos and v in pos))


def bipartite_subgraph(g: Graph, s: Iterable[int], t: Iterable[int]) -> Graph:
    """Graph on s | t (relabelled in increasing order) keeping only s-t edges of g."""
    a, b = _check_vertices(g, s), _check_vertices(g, t)
    if set(a) & set(b):
        raise GraphError(f"vertex sets overlap in {sorted(set(a) & set(b))}")
    vs = sorted(a + b)
    pos = {v: i for i, v in enumerate(vs)}
    sa, sb = set(a), set(b)
    return Graph.from_edges(
        len(vs), ((pos[u], pos[v]) for u, v in g.edges() if (u in sa and v in sb) or (u in sb and v in sa))
    )


def disjoint_union(*graphs: Graph) -> Graph:
    edges = []
    off = 0
    for h in graphs:
        edges += [(u + off, v + off) for u, v in h.edges()]
        off += h.n
    return Graph.from_edges(off, edges)


def coalescence(g1: RootedGraph, g2: RootedGraph) -> RootedGraph:
    """Identify the two roots.

    The vertices of ``g1`` keep their labels; the non-root vertices of ``g2``
    follow in their original order.  The merged vertex is g1's root.
    """
    n1 = g1.graph.n
    new = {}
    nxt = n1
    for v in range(g2.graph.n):
        if v == g2.root:
            new[v] = g1.root
        else:
            new[v] = nxt
            nxt += 1
    edges = g1.graph.edges() + [(new[u], new[v]) for u, v in g2.graph.edges()]
    return RootedGraph(Graph.from_edges(nxt, edges), g1.root)


def delete_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    masks = list(g.nbrs)
    for u, v in edges:
        if not (0 <= u < g.n and 0 <= v < g.n) or not (masks[u] >> v) & 1:
            raise GraphError(f"({u}, {v}) is not an edge")
        masks[u] &= ~(1 << v)
        masks[v] &= ~(1 << u)
    return Graph(g.n, masks)


def add_edges(g: Graph, edges: Iterable[tuple[int, int]]) -> Graph:
    return Graph.from_edges(g.n, g.edges() + list(edges))


def degree_partition(g: Graph) -> DegreePartition:
    deg = g.degrees()
    ds = sorted(set(deg), reverse=True)
    parts = tuple(tuple(v for v in range(g.n) if deg[v] == d) for d in ds)
    return DegreePartition(parts, tuple(ds))


# --------------------------------------------------------------------------
# invariants


def components(g: Graph) -> list[list[int]]:
    seen = 0
    out = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.nbrs[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(_bits(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def is_bipartite_component(g: Graph, comp: Sequence[int]) -> bool:
    colour = {comp[0]: 0}
    queue = deque([comp[0]])
    while queue:
        v = queue.popleft()
        for u in g.neighbors(v):
            if u not in colour:
                colour[u] = colour[v] ^ 1
                queue.append(u)
            elif colour[u] == colour[v]:
                return False
    return True


def girth(g: Graph) -> int:
    """Length of a shortest cycle, 0 for a forest."""
    best = 0
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if best and 2 * dist[v] >= best:
                break
            for u in g.neighbors(v):
                if u not in dist:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    c = dist[u] + dist[v] + 1
                    if not best or c < best:
                        best = c
    return best


def laplacian(g: Graph) -> list[list[int]]:
    deg = g.degrees()
    return [[deg[i] if i == j else -((g.nbrs[i] >> j) & 1) for j in range(g.n)] for i in range(g.n)]


def spanning_tree_count(g: Graph) -> int:
    """Matrix-tree cofactor; 0 for a disconnected (or empty) graph."""
    if g.n == 0 or not is_connected(g):
        return 0
    lap = laplacian(g)
    return det_integer([row[1:] for row in lap[1:]])


def walk_counts(g: Graph, k: int) -> list[int]:
    """Number of walks of each length 0..k, i.e. 1^T A^j 1."""
    vec = [1] * g.n
    out = [g.n]
    for _ in range(k):
        vec = [sum(vec[u] for u in g.neighbors(v)) for v in range(g.n)]
        out.append(sum(vec))
    return out


def invariants_report(g: Graph, walk_length: int = 4) -> dict:
    comps = components(g)
    return {
        "vertices": g.n,
        "edges": g.num_edges(),
        "isolated": sum(1 for m in g.nbrs if not m),
        "components": len(comps),
        "bipartite_components": sum(1 for c in comps if is_bipartite_component(g, c)),
        "girth": girth(g),
        "spanning_trees": spanning_tree_count(g),
        "walks": walk_counts(g, walk_length),
    }


def is_unicyclic(g: Graph) -> bool:
    return g.n > 0 and g.num_edges() == g.n and is_connected(g)


def is_tree(g: Graph) -> bool:
    return g.n > 0 and g.num_edges() == g.n - 1 and is_connected(g)


# --------------------------------------------------------------------------
# named graphs


def complete(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def empty(n: int) -> Graph:
    return Graph(n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star(k: int) -> Graph:
    """K_{1,k} with centre 0."""
    return Graph.from_edges(k + 1, ((0, i) for i in range(1, k + 1)))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def rook(a: int, b: int) -> Graph:
    """Cartesian product K_a x K_b (the a x b rook's graph)."""
    idx = lambda i, j: i * b + j  # noqa: E731
    edges = [
        (idx(i, j), idx(k, l))
        for i in range(a)
        for j in range(b)
        for k in range(a)
        for l in range(b)
        if idx(i, j) < idx(k, l) and (i == k or j == l)
    ]
    return Graph.from_edges(a * b, edges)


def shrikhande() -> Graph:
    """Cayley graph of Z4 x Z4 with connection set {+-(0,1), +-(1,0), +-(1,1)}."""
    gens = [(0, 1), (0, 3), (1, 0), (3, 0), (1, 1), (3, 3)]
    edges = set()
    for x in range(4):
        for y in range(4):
            for dx, dy in gens:
                u, v = 4 * x + y, 4 * ((x + dx) % 4) + (y + dy) % 4
                edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(16, sorted(edges))


def paley(q: int) -> Graph:
    """Paley graph for a prime q = 1 (mod 4), or q = p^2 for an odd prime p."""
    elems, add, sub, mul = _field(q)
    squares = {mul(x, x) for x in elems if x != elems[0]}
    index = {x: i for i, x in enumerate(elems)}
    edges = [
        (index[x], index[y]) for x in elems for y in elems if index[x] < index[y] and sub(x, y) in squares
    ]
    return Graph.from_edges(q, edges)


def _field(q: int):
    p = next((p for p in range(2, q + 1) if q % p == 0), q)
    if q == p:
        if q % 4 != 1:
            raise GraphError("Paley graphs need q = 1 (mod 4)")
        elems = list(range(q))
        return elems, lambda a, b: (a + b) % q, lambda a, b: (a - b) % q, lambda a, b: a * b % q
    if q != p * p or p == 2:
        raise GraphError(f"unsupported field order {q}")
    # GF(p^2) = GF(p)[x] / (x^2 - r) with r a non-residue
    r = next(r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1)
    elems = [(a, b) for a in range(p) for b in range(p)]

    def mul(x, y):
        return ((x[0] * y[0] + r * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    return (
        elems,
        lambda x, y: ((x[0] + y[0]) % p, (x[1] + y[1]) % p),
        lambda x, y: ((x[0] - y[0]) % p, (x[1] - y[1]) % p),
        mul,
    )


NAMED = {
    "petersen": petersen,
    "shrikhande": shrikhande,
    "rook4x4": lambda: rook(4, 4),
    "paley9": lambda: paley(9),
    "paley13": lambda: paley(13),
    "paley25": lambda: paley(25),
}


def named_graph(spec: str) -> Graph:
    """Resolve names such as ``K4``, ``P3``, ``C5``, ``S3`` (star K_{1,3}), ``E5`` or ``petersen``."""
    key = spec.strip()
    low = key.lower()
    if low in NAMED:
        return NAMED[low]()
    builders = {"K": complete, "P": path, "C": cycle, "S": star, "E": empty}
    if key[:1] in builders and key[1:].isdigit():
        return builders[key[0]](int(key[1:]))
    raise GraphError(f"unknown named graph {spec!r}")
