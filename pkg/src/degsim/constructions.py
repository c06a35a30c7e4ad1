"""Cospectral-pair generators: block operations on degree-similar pairs, and coalescences with McKay's tree.

Data files live in the package's ``data`` directory, or in the directory
named by the ``DEGSIM_DATA_DIR`` environment variable when it is set.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import IntEnum
from importlib import resources
from itertools import combinations
from pathlib import Path

from .algebra import BiPoly, det_bipoly
from .algebra.poly import gcd_bipoly
from .canon import certificate
from .graph import (
    DegreePartition,
    Graph,
    GraphError,
    ParseError,
    RootedGraph,
    coalescence,
    degree_partition,
    is_connected,
    is_tree,
    parse_edge_list,
    path,
    star,
)
from .similarity import YES, degree_similar, normalize_row_sums
from .spectra import cospectral, mu_polynomial

TREE_FILE = "fig5-treeT.txt"
SEED_FILE = "seed-pair.txt"


class DataError(ValueError):
    """A data file is missing, malformed or fails validation."""


# --------------------------------------------------------------------------
# data files


def data_path(name: str) -> Path:
    root = os.environ.get("DEGSIM_DATA_DIR")
    if root:
        return Path(root) / name
    return Path(str(resources.files("degsim") / "data" / name))


def read_data(name: str) -> str:
    p = data_path(name)
    try:
        return p.read_text()
    except OSError as exc:
        raise DataError(f"cannot read data file {p}: {exc.strerror}") from exc


def split_blocks(text: str) -> list[str]:
    """Split a multi-graph edge-list file at its name lines."""
    blocks: list[list[str]] = []
    for line in text.splitlines():
        body = line.split("#", 1)[0].strip()
        tok = body.split()
        if len(tok) == 1 and not tok[0].isdigit():
            blocks.append([])
        if blocks:
            blocks[-1].append(line)
    return ["\n".join(b) + "\n" for b in blocks]


def _directives(text: str) -> dict[str, list[str]]:
    out = {}
    for line in text.splitlines():
        if line.startswith("#!"):
            key, *vals = line[2:].split()
            out[key] = vals
    return out


# --------------------------------------------------------------------------
# McKay's tree


@dataclass(frozen=True)
class TreeTData:
    """The tree in canonical labelling, with each vertex's conventional label (1..16)."""

    edges: tuple[tuple[int, int], ...]
    labels: tuple[int, ...]
    roots: tuple[int, int] = (4, 7)
    name: str = "fig5-treeT"

    @property
    def n(self) -> int:
        return len(self.labels)

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)

    def labelled_graph(self) -> Graph:
        """The tree with vertex ``k - 1`` carrying conventional label k."""
        return self.graph().relabel([x - 1 for x in self.labels])

    @classmethod
    def parse(cls, text: str) -> "TreeTData":
        try:
            name, g = parse_edge_list(text)
        except ParseError as exc:
            raise DataError(f"tree data: {exc}") from exc
        d = _directives(text)
        try:
            labels = tuple(int(x) for x in d["conventional-labels"])
            roots = tuple(int(x) for x in d["roots"])
        except (KeyError, ValueError) as exc:
            raise DataError("tree data needs '#! conventional-labels' and '#! roots' lines of integers") from exc
        if sorted(labels) != list(range(1, g.n + 1)):
            raise DataError(f"conventional labels must be a permutation of 1..{g.n}")
        if len(roots) != 2:
            raise DataError("exactly two roots are required")
        return cls(tuple(g.edges()), labels, roots, name or "fig5-treeT")

    def to_text(self) -> str:
        lines = [self.name, f"n {self.n}"] + [f"{u} {v}" for u, v in self.edges]
        lines.append("#! conventional-labels " + " ".join(map(str, self.labels)))
        lines.append("#! roots " + " ".join(map(str, self.roots)))
        return "\n".join(lines) + "\n"


def load_tree_t() -> TreeTData:
    return TreeTData.parse(read_data(TREE_FILE))


def mckay_pair(base: RootedGraph, tree: TreeTData | None = None) -> tuple[Graph, Graph]:
    """base(r) coalesced with the tree at each of its two roots.

    The tree's vertices come first in conventional order (label k is vertex
    k - 1); the base's other vertices follow in their own order.
    """
    if base.graph.n < 2:
        raise GraphError("the attached graph must have at least two vertices")
    tree = tree or load_tree_t()
    lt = tree.labelled_graph()
    r1, r2 = (r - 1 for r in tree.roots)
    return (
        coalescence(RootedGraph(lt, r1), base).graph,
        coalescence(RootedGraph(lt, r2), base).graph,
    )


def path_base(m: int) -> RootedGraph:
    """P_{m+1} rooted at an endpoint."""
    return RootedGraph(path(m + 1), 0)


def star_base(k: int) -> RootedGraph:
    """K_{1,k} rooted at its centre."""
    return RootedGraph(star(k), 0)


def _principal(g: Graph, rows: list[int], cols: list[int]) -> BiPoly:
    """Minor of tI - L_mu(g) on the given rows and columns."""
    t, mu = BiPoly.t(), BiPoly.mu()
    deg = g.degrees()
    minus_one = BiPoly.const(-1)
    sub = [
        [t + mu * deg[i] if i == j else (minus_one if g.has_edge(i, j) else BiPoly()) for j in cols]
        for i in rows
    ]
    return det_bipoly(sub, len(rows), len(rows))


BETA = BiPoly([[-1, 0, 2], [0, 3], [1]])  # t^2 + 3 mu t + 2 mu^2 - 1
ALPHA = BiPoly([[0, 1], [1]])  # t + mu
GAMMA = BiPoly([[0, -5, 0, 6], [-3, 0, 11], [0, 6], [1]])  # t^3 + 6mu t^2 + (11mu^2 - 3)t + 6mu^3 - 5mu


def edge_block_poly(tree: TreeTData, a: int, b: int) -> BiPoly:
    """det(tI - L_mu(T)) restricted to the conventional vertices a, b."""
    return _principal(tree.labelled_graph(), [a - 1, b - 1], [a - 1, b - 1])


def cofactor_gcd(g: Graph, col: int) -> BiPoly:
    """gcd of the two minors of tI - L_mu(g) deleting the last row and either the last column or ``col``.

    ``col`` is a conventional (1-based) label.
    """
    n = g.n
    rows = list(range(n - 1))
    d_last = _principal(g, rows, list(range(n - 1)))
    d_col = _principal(g, rows, [j for j in range(n) if j != col - 1])
    return gcd_bipoly(d_last, d_col)


@dataclass
class ValidationReport:
    checks: list[tuple[str, bool, str]] = field(default_factory=list)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append((name, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def failures(self) -> list[str]:
        return [name for name, ok, _ in self.checks if not ok]

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in self.checks],
        }


def _attachments() -> list[tuple[str, RootedGraph]]:
    out = []
    for name, g in (("P2", path(2)), ("P3", path(3)), ("P4", path(4)), ("K13", star(3))):
        for r in range(g.n):
            out.append((f"{name}@{r}", RootedGraph(g, r)))
    return out


def validate_tree_t(candidate: TreeTData, fingerprints: bool = True) -> ValidationReport:
    """Every property the tree is known for, each as a named check."""
    rep = ValidationReport()
    g = candidate.graph()
    rep.add("tree", g.n == 16 and is_tree(g), f"{g.n} vertices, {g.num_edges()} edges")
    roots_ok = len(set(candidate.roots)) == 2 and all(1 <= r <= g.n for r in candidate.roots)
    rep.add("roots", roots_ok, str(candidate.roots))
    if not rep.ok:
        return rep
    for name, base in _attachments():
        g1, g2 = mckay_pair(base, candidate)
        rep.add(f"nonisomorphic:{name}", certificate(g1) != certificate(g2))
        for mode in ("A", "L", "Q", "N"):
            rep.add(f"cospectral-{mode}:{name}", cospectral(g1, g2, mode))
        rep.add(f"mu-cospectral:{name}", mu_polynomial(g1) == mu_polynomial(g2))
    if fingerprints:
        for a, b in ((11, 12), (14, 15)):
            p = edge_block_poly(candidate, a, b)
            rep.add(f"edge-block-{a}-{b}", p == BETA, str(p))
        target = (ALPHA * BETA * GAMMA).primitive()
        for k, g1 in enumerate(mckay_pair(path_base(1), candidate)):
            got = cofactor_gcd(g1, candidate.roots[0])
            rep.add(f"cofactor-gcd:G{k + 1}", got == target, str(got))
    return rep


# --------------------------------------------------------------------------
# block operations on degree-similar pairs


class PartOp(IntEnum):
    KEEP = 0
    COMPLEMENT = 1
    EMPTY = 2


class PairOp(IntEnum):
    KEEP = 0
    BIP_COMPLEMENT = 1
    BIP_EMPTY = 2


@dataclass(frozen=True)
class OpVector:
    """One operation per degree class and one per unordered pair of classes (lex order)."""

    parts: tuple[PartOp, ...]
    pairs: tuple[PairOp, ...]

    def __post_init__(self):
        t = len(self.parts)
        if len(self.pairs) != t * (t - 1) // 2:
            raise ValueError(f"{t} parts need {t * (t - 1) // 2} pair operations, got {len(self.pairs)}")

    @property
    def t(self) -> int:
        return len(self.parts)

    @staticmethod
    def count(t: int) -> int:
        return 3 ** (t + t * (t - 1) // 2)

    @classmethod
    def from_index(cls, t: int, index: int) -> "OpVector":
        """Mixed-radix, least significant digit first: parts, then pairs."""
        if not 0 <= index < cls.count(t):
            raise ValueError(f"index {index} outside 0..{cls.count(t) - 1}")
        digits = []
        for _ in range(t + t * (t - 1) // 2):
            index, d = divmod(index, 3)
            digits.append(d)
        return cls(tuple(PartOp(d) for d in digits[:t]), tuple(PairOp(d) for d in digits[t:]))

    def index(self) -> int:
        out = 0
        for d in reversed([int(x) for x in self.parts + self.pairs]):
            out = out * 3 + d
        return out

    def to_json(self) -> dict:
        return {"parts": [p.name.lower() for p in self.parts], "pairs": [p.name.lower() for p in self.pairs]}


def all_op_vectors(t: int):
    for i in range(OpVector.count(t)):
        yield OpVector.from_index(t, i)


def apply_ops(g: Graph, parts, ops: OpVector) -> Graph:
    if len(parts) != ops.t:
        raise GraphError(f"operation vector has {ops.t} parts, partition has {len(parts)}")
    masks = list(g.nbrs)
    pmask = [sum(1 << v for v in p) for p in parts]

    def rewrite(v: int, region: int, fill: bool) -> None:
        # replace v's neighbours inside ``region`` by their complement or by nothing
        keep = masks[v] & ~region
        new = (region & ~masks[v] & ~(1 << v)) if fill else 0
        masks[v] = keep | new

    for i, op in enumerate(ops.parts):
        if op is not PartOp.KEEP:
            for v in parts[i]:
                rewrite(v, pmask[i], op is PartOp.COMPLEMENT)
    for (i, j), op in zip(combinations(range(ops.t), 2), ops.pairs):
        if op is PairOp.KEEP:
            continue
        for a, b in ((i, j), (j, i)):
            for v in parts[a]:
                rewrite(v, pmask[b], op is PairOp.BIP_COMPLEMENT)
    return Graph(g.n, masks)


def _aligned(g: Graph, pi: DegreePartition) -> bool:
    return degree_partition(g) == pi


def apply_block_operations(
    g1: Graph, g2: Graph, ops: OpVector, pi: DegreePartition | None = None
) -> tuple[Graph, Graph]:
    """Apply the same operations to both graphs, part i of each being its i-th degree class.

    ``pi`` (optional) is checked against g1's degree partition; g2 must have
    the same class degrees and sizes.
    """
    p1, p2 = degree_partition(g1), degree_partition(g2)
    if pi is not None and not _aligned(g1, pi):
        raise GraphError("partition is not the degree partition of the first graph")
    if p1.degrees != p2.degrees or p1.sizes() != p2.sizes():
        raise GraphError("degree partitions of the two graphs do not align")
    return apply_ops(g1, p1.parts, ops), apply_ops(g2, p2.parts, ops)


def degree_preserving(pi: DegreePartition, g: Graph, ops: OpVector) -> bool:
    """Does the operated graph keep the partition, each class with its degree?"""
    h = apply_ops(g, pi.parts, ops)
    deg = h.degrees()
    return all(deg[v] == d for part, d in zip(pi.parts, pi.degrees) for v in part)


@dataclass(frozen=True)
class SeedPair:
    g1: Graph
    g2: Graph
    names: tuple[str, str]


def load_seed_pair() -> SeedPair:
    blocks = split_blocks(read_data(SEED_FILE))
    if len(blocks) != 2:
        raise DataError(f"seed pair file must hold two graphs, found {len(blocks)}")
    try:
        (n1, g1), (n2, g2) = (parse_edge_list(b) for b in blocks)
    except ParseError as exc:
        raise DataError(f"seed pair: {exc}") from exc
    return SeedPair(g1, g2, (n1 or "g1", n2 or "g2"))


def validate_seed_pair(pair: SeedPair) -> ValidationReport:
    rep = ValidationReport()
    p1 = degree_partition(pair.g1)
    rep.add("three-degree-classes", len(p1.parts) == 3, str(p1.degrees))
    rep.add("nonisomorphic", certificate(pair.g1) != certificate(pair.g2))
    ds = degree_similar(pair.g1, pair.g2)
    rep.add("degree-similar", ds.verdict == YES, ds.verdict)
    if ds.verdict == YES:
        ok = is_connected(pair.g1) and normalize_row_sums(pair.g1, pair.g2, ds.witness) is not None
        rep.add("normalized-witness", ok)
    return rep
