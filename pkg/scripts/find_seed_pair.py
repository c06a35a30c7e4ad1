"""Search for a small non-isomorphic degree-similar pair with degree classes {4, 3, 2}.

Godsil-McKay switching on a 4-set C whose vertices share one degree and
induce a regular subgraph, where every outside vertex sees 0, 2 or 4
vertices of C, conjugates A by the orthogonal matrix Q = diag(J/2 - I, I).
If the switch also leaves every degree unchanged, Q conjugates D as well,
so the pair is degree-similar with a witness whose rows and columns sum to 1.

Usage: python3 scripts/find_seed_pair.py [--n N] [--tries K] [--seed S]
"""

import argparse
import random
from itertools import combinations

from degsim.canon import certificate
from degsim.graph import Graph, emit_edge_list, is_connected
from degsim.similarity import YES, degree_similar


def switch(g: Graph, c: tuple) -> Graph | None:
    cs = set(c)
    deg = g.degrees()
    if len({deg[v] for v in c}) != 1:
        return None
    inside = [sum(1 for u in c if g.has_edge(u, v)) for v in c]
    if len(set(inside)) != 1:
        return None
    masks = list(g.nbrs)
    for x in range(g.n):
        if x in cs:
            continue
        hit = [v for v in c if g.has_edge(x, v)]
        if len(hit) not in (0, 2, 4):
            return None
        if len(hit) == 2:
            for v in c:
                masks[x] ^= 1 << v
                masks[v] ^= 1 << x
    return Graph(g.n, masks)


def random_graph(rng: random.Random, n: int) -> Graph | None:
    # degrees drawn from {2, 3, 4}, realised by a randomized configuration model
    deg = [rng.choice((2, 3, 4)) for _ in range(n)]
    if sum(deg) % 2 or len(set(deg)) != 3:
        return None
    stubs = [v for v in range(n) for _ in range(deg[v])]
    rng.shuffle(stubs)
    edges = set()
    for a, b in zip(stubs[::2], stubs[1::2]):
        if a == b or (min(a, b), max(a, b)) in edges:
            return None
        edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(n, edges)


def search(n: int, tries: int, seed: int):
    rng = random.Random(seed)
    for _ in range(tries):
        g = random_graph(rng, n)
        if g is None or not is_connected(g):
            continue
        for c in combinations(range(n), 4):
            h = switch(g, c)
            if h is None or h.degrees() != g.degrees() or h == g:
                continue
            if certificate(g) == certificate(h):
                continue
            if degree_similar(g, h).verdict == YES:
                return g, h, c
    return None


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=10)
    ap.add_argument("--tries", type=int, default=200_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    for n in range(6, args.n + 1):
        found = search(n, args.tries, args.seed)
        if found:
            g, h, c = found
            print(f"# n={n} switching set {list(c)}")
            print(emit_edge_list(g, "seed-pair-g1"), end="")
            print(emit_edge_list(h, "seed-pair-g2"), end="")
            return
        print(f"# none found on {n} vertices")
    raise SystemExit(1)


if __name__ == "__main__":
    main()
