import random
from itertools import product

import pytest

from degsim.canon import certificate
from degsim.constructions import (
    ALPHA,
    BETA,
    GAMMA,
    DataError,
    OpVector,
    PairOp,
    PartOp,
    TreeTData,
    all_op_vectors,
    apply_block_operations,
    cofactor_gcd,
    degree_preserving,
    edge_block_poly,
    load_seed_pair,
    load_tree_t,
    mckay_pair,
    path_base,
    star_base,
    validate_tree_t,
)
from degsim.graph import (
    Graph,
    GraphError,
    RootedGraph,
    complete,
    cycle,
    degree_partition,
    empty,
    is_tree,
    path,
)
from degsim.search import random_tree
from degsim.spectra import mu_polynomial


# operation vectors ---------------------------------------------------------------


def test_op_vector_counts_and_roundtrip():
    assert OpVector.count(3) == 729
    vecs = list(all_op_vectors(3))
    assert len(vecs) == len(set(vecs)) == 729
    for i in (0, 1, 2, 3, 100, 728):
        assert OpVector.from_index(3, i).index() == i
    v = OpVector.from_index(3, 1)
    assert v.parts[0] is PartOp.COMPLEMENT and all(p is PairOp.KEEP for p in v.pairs)
    with pytest.raises(ValueError):
        OpVector.from_index(3, 729)
    with pytest.raises(ValueError):
        OpVector((PartOp.KEEP,) * 3, (PairOp.KEEP,))


def test_all_keep_and_all_empty():
    pair = load_seed_pair()
    keep = OpVector((PartOp.KEEP,) * 3, (PairOp.KEEP,) * 3)
    assert apply_block_operations(pair.g1, pair.g2, keep) == (pair.g1, pair.g2)
    wipe = OpVector((PartOp.EMPTY,) * 3, (PairOp.BIP_EMPTY,) * 3)
    assert apply_block_operations(pair.g1, pair.g2, wipe) == (empty(10), empty(10))


def test_unaligned_partitions_rejected():
    ops = OpVector((PartOp.KEEP,), ())
    with pytest.raises(GraphError):
        apply_block_operations(cycle(4), path(4), OpVector((PartOp.KEEP,) * 2, (PairOp.KEEP,)))
    with pytest.raises(GraphError):
        apply_block_operations(cycle(4), cycle(4), ops, pi=degree_partition(path(4)))


def test_complementing_inside_a_part_exchanges_mixed_edges_only():
    pair = load_seed_pair()
    pi = degree_partition(pair.g1)
    ops = OpVector((PartOp.COMPLEMENT, PartOp.KEEP, PartOp.KEEP), (PairOp.KEEP,) * 3)
    h1, _ = apply_block_operations(pair.g1, pair.g2, ops)
    inside = pi.parts[0]
    for u, v in product(range(10), repeat=2):
        if u != v:
            if u in inside and v in inside:
                assert h1.has_edge(u, v) != pair.g1.has_edge(u, v)
            else:
                assert h1.has_edge(u, v) == pair.g1.has_edge(u, v)


def test_degree_preserving_examples():
    c5, k3 = cycle(5), complete(3)
    comp = OpVector((PartOp.COMPLEMENT,), ())
    keep = OpVector((PartOp.KEEP,), ())
    assert degree_preserving(degree_partition(c5), c5, comp)
    assert degree_preserving(degree_partition(c5), c5, keep)
    assert not degree_preserving(degree_partition(k3), k3, comp)


# McKay coalescence -------------------------------------------------------------------


def test_shipped_tree_shape():
    tree = load_tree_t()
    assert tree.n == 16 and tree.roots == (4, 7)
    assert is_tree(tree.graph())
    assert TreeTData.parse(tree.to_text()) == tree


def test_mckay_pair_bases():
    with pytest.raises(GraphError):
        mckay_pair(RootedGraph(Graph(1), 0))
    g1, g2 = mckay_pair(path_base(1))
    assert g1.n == g2.n == 17
    assert mu_polynomial(g1) == mu_polynomial(g2)
    assert certificate(g1) != certificate(g2)
    h1, h2 = mckay_pair(star_base(3))
    assert h1.n == 19
    assert mu_polynomial(h1) == mu_polynomial(h2)
    assert certificate(h1) != certificate(h2)


def test_fingerprints_of_shipped_tree():
    tree = load_tree_t()
    assert edge_block_poly(tree, 11, 12) == BETA
    assert edge_block_poly(tree, 14, 15) == BETA
    g1, g2 = mckay_pair(path_base(1), tree)
    target = (ALPHA * BETA * GAMMA).primitive()
    assert cofactor_gcd(g1, 4) == target
    assert cofactor_gcd(g2, 7) == target


def random_tree_data(rng):
    g = random_tree(16, rng)
    roots = tuple(sorted(rng.sample(range(1, 17), 2)))
    return TreeTData(tuple(g.edges()), tuple(range(1, 17)), roots, "random")


def test_random_trees_are_not_mu_cospectral_under_coalescence():
    rng = random.Random(21)
    for _ in range(20):
        cand = random_tree_data(rng)
        g1, g2 = mckay_pair(path_base(1), cand)
        assert mu_polynomial(g1) != mu_polynomial(g2)


def test_validation_rejects_path_and_random_tree():
    p16 = TreeTData(tuple(path(16).edges()), tuple(range(1, 17)), (1, 16), "P16")
    rep = validate_tree_t(p16, fingerprints=False)
    assert not rep.ok
    assert any(name.startswith("nonisomorphic") for name in rep.failures())
    rep = validate_tree_t(random_tree_data(random.Random(22)), fingerprints=False)
    assert not rep.ok


def test_tree_parse_errors():
    text = load_tree_t().to_text()
    with pytest.raises(DataError):
        TreeTData.parse(text.replace("#! roots 4 7", ""))
    with pytest.raises(DataError):
        TreeTData.parse(text.replace("#! roots 4 7", "#! roots 4"))
    with pytest.raises(DataError):
        TreeTData.parse(text.replace("conventional-labels 10", "conventional-labels 99"))
    with pytest.raises(DataError):
        TreeTData.parse(text.replace("0 15", "0 x"))
