import random
from fractions import Fraction

import networkx as nx
import pytest

from degsim.algebra import inverse
from degsim.graph import Graph, GraphError, complete, cycle, empty, paley, path, petersen, star, rook, shrikhande
from degsim.srg import (
    PreconditionError,
    SrgParams,
    delete_h_in_clique,
    det_commutation_check,
    enumerate_cliques,
    is_one_walk_regular,
    sherman_morrison_check,
    srg_params,
    sweep_mu_equal,
)


def test_srg_params_examples():
    assert srg_params(petersen()) == SrgParams(10, 3, 0, 1)
    assert srg_params(cycle(5)) == SrgParams(5, 2, 0, 1)
    assert srg_params(path(4)) is None
    assert srg_params(shrikhande()) == srg_params(rook(4, 4)) == SrgParams(16, 6, 2, 2)
    assert srg_params(paley(13)) == SrgParams(13, 6, 2, 3)
    with pytest.raises(ValueError):
        SrgParams(10, 3, 1, 1)


def test_one_walk_regular():
    assert is_one_walk_regular(petersen())
    assert not is_one_walk_regular(star(3))
    # vertex- and edge-transitive graphs are 1-walk regular
    corpus = [cycle(7), complete(5), rook(3, 3), shrikhande(), paley(9),
              Graph.from_edges(8, nx.convert_node_labels_to_integers(nx.hypercube_graph(3)).edges())]
    for g in corpus:
        assert is_one_walk_regular(g)


def test_cliques():
    assert len(enumerate_cliques(complete(4), 3)) == 4
    assert enumerate_cliques(petersen(), 3) == []
    assert enumerate_cliques(cycle(5), 2) == [tuple(e) for e in cycle(5).edges()]
    with pytest.raises(ValueError):
        enumerate_cliques(cycle(5), 0)


def test_delete_in_clique():
    g = petersen()
    h = delete_h_in_clique(g, complete(2), (0, 1), (0, 1))
    assert h.num_edges() == 14 and not h.has_edge(0, 1)
    k4 = complete(4)
    assert delete_h_in_clique(k4, path(3), (0, 1, 2), (0, 1, 2)).num_edges() == 4
    assert delete_h_in_clique(k4, empty(3), (0, 1, 2), (2, 0, 1)) == k4
    with pytest.raises(GraphError):
        delete_h_in_clique(k4, path(3), (0, 1), (0, 1))
    with pytest.raises(GraphError):
        delete_h_in_clique(cycle(5), complete(2), (0, 2), (0, 2))


def test_petersen_sweep():
    rep = sweep_mu_equal(petersen(), complete(2), 2, with_complement=True)
    assert rep.checked == 15
    assert rep.psi_distinct == rep.iso_classes == rep.complement_psi_distinct == 1
    assert rep.all_equal


def test_sweep_preconditions():
    with pytest.raises(PreconditionError):
        sweep_mu_equal(path(4), complete(2), 2)
    # 1-walk regular but not strongly regular
    with pytest.raises(PreconditionError):
        sweep_mu_equal(cycle(7), complete(2), 2, with_complement=True)


# rank-one updates ------------------------------------------------------------------


def test_sherman_morrison_examples():
    ident = [[int(i == j) for j in range(3)] for i in range(3)]
    e1 = [1, 0, 0]
    res = sherman_morrison_check(ident, e1, e1)
    assert not res.singular
    assert res.inverse == [[Fraction(1, 2), 0, 0], [0, 1, 0], [0, 0, 1]]
    assert sherman_morrison_check(ident, e1, [-1, 0, 0]).singular
    with pytest.raises(ValueError):
        sherman_morrison_check([[1, 1], [1, 1]], [1, 0], [0, 1])


def sherman_morrison_instances(count, rng):
    """Random 5x5 rank-one updates checked against direct inversion; returns the count done."""
    done = 0
    while done < count:
        b = [[rng.randint(-4, 4) for _ in range(5)] for _ in range(5)]
        u = [rng.randint(-3, 3) for _ in range(5)]
        v = [rng.randint(-3, 3) for _ in range(5)]
        try:
            inverse(b)
        except ZeroDivisionError:
            continue
        res = sherman_morrison_check(b, u, v)
        updated = [[b[i][j] + u[i] * v[j] for j in range(5)] for i in range(5)]
        if res.singular:
            with pytest.raises(ZeroDivisionError):
                inverse(updated)
        else:
            assert res.inverse == inverse(updated)
        done += 1
    return done


def test_sherman_morrison_random_against_direct_inverse():
    assert sherman_morrison_instances(30, random.Random(31)) == 30


def test_det_commutation():
    assert det_commutation_check([[1, 2, 3]], [[4], [5], [6]])
    assert det_commutation_check([[0, 0], [0, 0]], [[0, 0], [0, 0]])
    with pytest.raises(ValueError):
        det_commutation_check([[1, 2]], [[1, 2]])
    rng = random.Random(32)
    for _ in range(200):
        m, n = rng.randint(1, 5), rng.randint(1, 5)
        c = [[Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(n)] for _ in range(m)]
        d = [[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)]
        assert det_commutation_check(c, d)
