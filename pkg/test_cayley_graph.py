# test_cayley_graph.py
"""
Тесты графа Γ⁺_G(S) и max-flow оракула вершинной связности.
Оракул сверяется с полным перебором границ на маленьких группах.
"""

import networkx as nx
import numpy as np
import pytest

from abelian_group import GSubset, make_group, subgroup_from_members
from cayley_graph import (
    build_graph,
    connectivity_criterion,
    dump_dot,
    enumerate_fragments,
    fragment_is_genuine,
    is_complete,
    is_connected,
    kappa_by_boundaries,
    kappa_oracle,
    make_fragment,
    quotient_graph,
    quotient_kappa,
    vertex_connectivity,
)
from errors import InvalidInputError, NoFragmentsError, PreconditionError, ResourceLimitError
from sumsets import diffset

SMALL_GROUPS = [[2], [3], [4], [2, 2], [5], [6], [7], [8], [4, 2], [2, 2, 2]]


def subset(G, *members):
    return GSubset.from_indices(G, members)


def all_subsets(G):
    for bits in range(1 << G.order):
        yield GSubset.from_bits(G, bits)


# === ПОСТРОЕНИЕ ===

def test_neighbors_are_s_minus_g():
    G = make_group([5])
    graph = build_graph(G, subset(G, 1, 4))
    assert graph.neighbors(0) == {1, 4}
    assert graph.neighbors(2) == {2, 4}
    assert graph.loops == frozenset({2, 3})


@pytest.mark.parametrize("factors", SMALL_GROUPS)
def test_degree_regularity_and_neighborhood_identity(factors):
    G = make_group(factors)
    for S in all_subsets(G):
        graph = build_graph(G, S)
        assert all(graph.degree(g) == len(S) for g in range(G.order))
        A = subset(G, *range(0, G.order, 2))
        assert graph.neighborhood(A) == diffset(G, S, A)


# === ПОЛНОТА И СВЯЗНОСТЬ ===

def test_is_complete():
    V4 = make_group([2, 2])
    assert is_complete(V4, subset(V4, 1, 2, 3))
    assert is_complete(V4, GSubset.full(V4))
    Z4 = make_group([4])
    assert not is_complete(Z4, subset(Z4, 1, 2, 3))
    assert is_complete(make_group([]), GSubset.empty(make_group([])))


@pytest.mark.parametrize("factors", SMALL_GROUPS)
def test_is_complete_matches_adjacency(factors):
    G = make_group(factors)
    for S in all_subsets(G):
        assert is_complete(G, S) == build_graph(G, S).is_complete_by_adjacency()


def test_is_connected():
    Z8 = make_group([8])
    assert not is_connected(Z8, subset(Z8, 1))
    Z5 = make_group([5])
    assert is_connected(Z5, subset(Z5, 1, 4))
    assert is_connected(make_group([]), GSubset.empty(make_group([])))


@pytest.mark.parametrize("factors", [[4], [2, 2], [6], [8], [4, 2]])
def test_connectivity_criterion_matches_traversal(factors):
    G = make_group(factors)
    for S in all_subsets(G):
        assert connectivity_criterion(G, S) == is_connected(G, S)


# === ОРАКУЛ ===

def test_vertex_connectivity_known_graphs():
    assert vertex_connectivity(nx.complete_graph(5)) == 4
    assert vertex_connectivity(nx.cycle_graph(6)) == 2
    assert vertex_connectivity(nx.path_graph(4)) == 1
    assert vertex_connectivity(nx.complete_bipartite_graph(3, 3)) == 3
    assert vertex_connectivity(nx.petersen_graph()) == 3
    disconnected = nx.Graph([(0, 1), (2, 3)])
    assert vertex_connectivity(disconnected) == 0


def test_vertex_connectivity_ignores_loops():
    graph = nx.path_graph(3)
    graph.add_edge(1, 1)
    assert vertex_connectivity(graph) == 1


def test_kappa_oracle_examples():
    Z4 = make_group([4])
    assert kappa_oracle(Z4, subset(Z4, 1, 3)) == 2
    Z5 = make_group([5])
    assert kappa_oracle(Z5, subset(Z5, 1, 4)) == 1
    Z8 = make_group([8])
    assert kappa_oracle(Z8, subset(Z8, 1)) == 0
    V4 = make_group([2, 2])
    assert kappa_oracle(V4, subset(V4, 1, 2, 3)) == 3


@pytest.mark.parametrize("factors", [[4], [2, 2], [5], [6], [7], [8], [4, 2], [3, 3]])
def test_oracle_matches_boundary_enumeration(factors):
    G = make_group(factors)
    for bits in range((1 << G.order) - 1):
        S = GSubset.from_bits(G, bits)
        assert kappa_oracle(G, S) == kappa_by_boundaries(G, S, max_order=9)


@pytest.mark.parametrize("factors", [[10], [11], [12], [6, 2]])
def test_oracle_matches_boundary_enumeration_sampled(factors):
    G = make_group(factors)
    rng = np.random.default_rng(sum(factors))
    for bits in rng.integers(0, (1 << G.order) - 1, size=12):
        S = GSubset.from_bits(G, int(bits))
        assert kappa_oracle(G, S) == kappa_by_boundaries(G, S, max_order=12)


def test_oracle_resource_limit(monkeypatch):
    from config import config
    monkeypatch.setattr(config, "ORACLE_MAX_ORDER", 8)
    G = make_group([9])
    with pytest.raises(ResourceLimitError):
        kappa_oracle(G, subset(G, 1))


def test_kappa_by_boundaries_limit():
    G = make_group([16])
    with pytest.raises(ResourceLimitError):
        kappa_by_boundaries(G, subset(G, 1))


# === ФРАГМЕНТЫ ===

def test_make_fragment():
    G = make_group([5])
    S = subset(G, 1, 4)
    fragment = make_fragment(G, S, subset(G, 2))
    assert fragment.boundary.members == (4,)
    assert fragment.cut_size == 1
    assert fragment.outside.members == (0, 1, 3)


def test_make_fragment_errors():
    G = make_group([4])
    S = subset(G, 1, 3)
    with pytest.raises(InvalidInputError):
        make_fragment(G, S, GSubset.empty(G))
    with pytest.raises(PreconditionError):
        make_fragment(G, S, subset(G, 0, 1))


def test_enumerate_fragments_bipartite():
    G = make_group([4])
    S = subset(G, 1, 3)
    fragments = enumerate_fragments(G, S)
    assert [f.vertices.members for f in fragments] == [(0,), (1,), (2,), (3,)]
    assert fragments[0].boundary.members == (1, 3)
    graph = build_graph(G, S)
    assert all(fragment_is_genuine(graph, f, 2) for f in fragments)


def test_enumerate_fragments_exhaustive():
    G = make_group([6])
    S = subset(G, 1, 2)
    kappa = kappa_oracle(G, S)
    fragments = enumerate_fragments(G, S, exhaustive=True)
    assert fragments
    graph = build_graph(G, S)
    assert all(fragment_is_genuine(graph, f, kappa) for f in fragments)


def test_enumerate_fragments_disconnected():
    G = make_group([8])
    S = subset(G, 1)
    fragments = enumerate_fragments(G, S)
    assert all(f.cut_size == 0 for f in fragments)
    assert subset(G, 4, 5) in {f.vertices for f in fragments}


def test_enumerate_fragments_with_known_kappa():
    G = make_group([4, 2])
    S = subset(G, 1, 2, 3, 5, 7)
    kappa = kappa_oracle(G, S)
    assert enumerate_fragments(G, S, kappa=kappa) == enumerate_fragments(G, S)


def test_enumerate_fragments_complete_graph():
    V4 = make_group([2, 2])
    with pytest.raises(NoFragmentsError):
        enumerate_fragments(V4, subset(V4, 1, 2, 3))


def test_enumerate_fragments_exhaustive_limit(monkeypatch):
    from config import config
    monkeypatch.setattr(config, "EXHAUSTIVE_CUTS_MAX_ORDER", 4)
    G = make_group([6])
    with pytest.raises(ResourceLimitError):
        enumerate_fragments(G, subset(G, 1, 2), exhaustive=True)


def test_fragment_is_genuine_rejects_wrong_size():
    G = make_group([5])
    S = subset(G, 1, 4)
    fragment = make_fragment(G, S, subset(G, 0))
    assert not fragment_is_genuine(build_graph(G, S), fragment, 1)
    assert fragment_is_genuine(build_graph(G, S), fragment, 2)


# === ФАКТОР-ГРАФ ===

def test_quotient_graph():
    G = make_group([4, 2])
    H = subgroup_from_members(G, [0, 1])
    S = subset(G, (1, 0), (1, 1), (3, 0))
    graph = quotient_graph(G, S, H)
    assert graph.number_of_nodes() == 4
    # образ S в Z4 — {1,3}: полный двудольный K_{2,2}
    assert quotient_kappa(G, S, H) == 2


def test_dump_dot(tmp_path):
    pytest.importorskip("pydot")
    G = make_group([5])
    path = tmp_path / "graph.dot"
    dump_dot(build_graph(G, subset(G, 1, 4)), str(path))
    assert "graph" in path.read_text()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
