# cayley_graph.py
"""
Аддитивный граф Кэли Γ⁺_G(S): вершины — элементы G, ребро g1–g2 при g1 + g2 ∈ S.

Здесь же живет независимый оракул: вершинная связность через теорему Менгера
(max-flow в сети с расщепленными вершинами единичной пропускной способности),
а также извлечение минимальных разрезов и фрагментов.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Set, Tuple

import networkx as nx
import numpy as np
from networkx.algorithms.connectivity import (
    build_auxiliary_node_connectivity,
    local_node_connectivity,
    minimum_st_node_cut,
)
from networkx.algorithms.flow import build_residual_network, shortest_augmenting_path

from abelian_group import GroupSpec, GSubset, Subgroup, all_subgroups, coset_space
from config import config
from errors import InvalidInputError, NoFragmentsError, PreconditionError, ResourceLimitError
from sumsets import diffset, saturate

logger = logging.getLogger(__name__)


class AdditionCayleyGraph:
    """
    Граф Γ⁺_G(S) поверх networkx.Graph. Петли (2g ∈ S) хранятся в графе,
    но при подсчете разрезов отбрасываются.
    """

    def __init__(self, group: GroupSpec, connection_set: GSubset):
        self.group = group
        self.connection_set = connection_set
        self.graph = nx.Graph()
        self.graph.add_nodes_from(range(group.order))

        # соседи g образуют S − g
        sources = np.tile(np.arange(group.order), connection_set.cardinality)
        targets = group.add_table[np.repeat(connection_set.indices, group.order), group.neg_table[sources]]
        self.graph.add_edges_from(zip(sources.tolist(), targets.tolist()))

        self.loops = frozenset(int(g) for g in np.flatnonzero(connection_set.mask[group.double_table]))

    def neighbors(self, g: int) -> Set[int]:
        return set(self.graph.adj[g])

    def degree(self, g: int) -> int:
        """Степень с учетом петли как 1."""
        return len(self.graph.adj[g])

    def neighborhood(self, subset: GSubset) -> GSubset:
        """N(A) обходом смежности; должно совпадать с S − A."""
        reached = set()
        for a in subset.members:
            reached.update(self.graph.adj[a])
        return GSubset.from_indices(self.group, reached)

    def without_loops(self) -> nx.Graph:
        return _loopless(self.graph)

    def is_complete_by_adjacency(self) -> bool:
        return _is_complete_graph(self.without_loops())


@dataclass(frozen=True)
class Fragment:
    """Фрагмент A с границей (S−A)∖A и непустой внешней частью G∖((S−A)∪A)."""
    vertices: GSubset
    boundary: GSubset
    outside: GSubset

    @property
    def cut_size(self) -> int:
        return len(self.boundary)


# === ПОСТРОЕНИЕ И ПРЕДИКАТЫ ===

def build_graph(G: GroupSpec, S: GSubset) -> AdditionCayleyGraph:
    return AdditionCayleyGraph(G, S)


def is_complete(G: GroupSpec, S: GSubset) -> bool:
    """S = G, либо S = G∖{0} и G — элементарная абелева 2-группа (возможно, ранга 0)."""
    if len(S) == G.order:
        return True
    elementary = bool((G.double_table == 0).all())
    return len(S) == G.order - 1 and not S.mask[0] and elementary


def is_connected(G: GroupSpec, S: GSubset) -> bool:
    """Авторитетный ответ обходом графа; одна вершина считается связным графом."""
    if G.order == 1:
        return True
    return nx.is_connected(build_graph(G, S).graph)


def connectivity_criterion(G: GroupSpec, S: GSubset) -> bool:
    """
    Критерий через смежные классы: граф связен тогда и только тогда, когда S
    не лежит в смежном классе собственной подгруппы, за исключением
    ненулевого класса подгруппы индекса 2.
    """
    if G.order == 1:
        return True
    if not S:
        return False
    s0 = int(S.indices[0])
    for H in all_subgroups(G):
        if H.order == G.order:
            continue
        if len(saturate(G, S, H)) != H.order:
            continue
        if not (G.order // H.order == 2 and not H.mask[s0]):
            return False
    return True


# === ОРАКУЛ ВЕРШИННОЙ СВЯЗНОСТИ ===

def _loopless(graph: nx.Graph) -> nx.Graph:
    stripped = graph.copy()
    stripped.remove_edges_from(list(nx.selfloop_edges(stripped)))
    return stripped


def _is_complete_graph(graph: nx.Graph) -> bool:
    n = graph.number_of_nodes()
    return graph.number_of_edges() == n * (n - 1) // 2


def _sweep_pairs(graph: nx.Graph) -> List[Tuple[int, int]]:
    """
    Пары (s, t) несмежных вершин, которых достаточно для κ:
    v минимальной степени против всех несоседей и попарно соседи v.
    """
    v = min(graph, key=lambda u: (graph.degree(u), u))
    nbrs = sorted(graph[v])
    pairs = [(v, w) for w in sorted(set(graph) - set(nbrs) - {v})]
    pairs += [(x, y) for x, y in itertools.combinations(nbrs, 2) if not graph.has_edge(x, y)]
    return pairs


def _flow_tools(graph: nx.Graph):
    auxiliary = build_auxiliary_node_connectivity(graph)
    residual = build_residual_network(auxiliary, "capacity")
    return auxiliary, residual


def vertex_connectivity(graph: nx.Graph) -> int:
    """
    Точная вершинная связность: полный граф → n−1, несвязный → 0, иначе
    минимум локальных связностей по парам из _sweep_pairs.
    """
    stripped = _loopless(graph)
    if _is_complete_graph(stripped):
        return stripped.number_of_nodes() - 1
    if not nx.is_connected(stripped):
        return 0

    auxiliary, residual = _flow_tools(stripped)
    kappa = min(d for _, d in stripped.degree())
    for s, t in _sweep_pairs(stripped):
        kappa = min(kappa, local_node_connectivity(
            stripped, s, t,
            flow_func=shortest_augmenting_path,
            auxiliary=auxiliary,
            residual=residual,
            cutoff=kappa,
        ))
        if kappa == 0:
            break
    return kappa


def _check_oracle_bound(G: GroupSpec) -> None:
    if G.order > config.ORACLE_MAX_ORDER:
        raise ResourceLimitError(f"Порядок группы {G.order} превышает лимит оракула {config.ORACLE_MAX_ORDER}")


def kappa_oracle(G: GroupSpec, S: GSubset) -> int:
    """κ(Γ⁺_G(S)) независимо от формулы, через max-flow."""
    _check_oracle_bound(G)
    return vertex_connectivity(build_graph(G, S).graph)


# === ФРАГМЕНТЫ ===

def make_fragment(G: GroupSpec, S: GSubset, A: GSubset) -> Fragment:
    if not A:
        raise InvalidInputError("Фрагмент должен быть непустым")
    neighborhood = diffset(G, S, A)
    closed = neighborhood.union(A)
    outside = closed.complement()
    if not outside:
        raise PreconditionError(f"Замкнутая окрестность {set(A.members)} покрывает всю группу")
    return Fragment(vertices=A, boundary=neighborhood.difference(A), outside=outside)


def _min_cuts(graph: nx.Graph, kappa: int, exhaustive: bool) -> List[Set[int]]:
    if kappa == 0:
        return [set()]
    if exhaustive:
        return [set(cut) for cut in nx.all_node_cuts(graph, k=kappa)]

    auxiliary, residual = _flow_tools(graph)
    cuts = []
    for s, t in _sweep_pairs(graph):
        cut = minimum_st_node_cut(graph, s, t, flow_func=shortest_augmenting_path,
                                  auxiliary=auxiliary, residual=residual)
        if len(cut) == kappa:
            cuts.append(set(cut))
    return cuts


def enumerate_fragments(G: GroupSpec, S: GSubset, exhaustive: bool = False, kappa: Optional[int] = None) -> List[Fragment]:
    """
    Компоненты графа без минимального разреза, упакованные во Fragment.
    По умолчанию берутся разрезы, найденные обходом пар; exhaustive=True:
    все минимальные разрезы (только для |G| <= EXHAUSTIVE_CUTS_MAX_ORDER).
    Если κ уже известен (например, от kappa_oracle), он передается в kappa.
    """
    if is_complete(G, S):
        raise NoFragmentsError("У полного графа нет вершинных разрезов")
    _check_oracle_bound(G)
    if exhaustive and G.order > config.EXHAUSTIVE_CUTS_MAX_ORDER:
        raise ResourceLimitError(
            f"Полный перебор минимальных разрезов доступен только при |G| <= {config.EXHAUSTIVE_CUTS_MAX_ORDER}"
        )

    stripped = build_graph(G, S).without_loops()
    if kappa is None:
        kappa = vertex_connectivity(stripped)

    fragments = {}
    for cut in _min_cuts(stripped, kappa, exhaustive):
        remainder = stripped.subgraph(set(stripped) - cut)
        for component in nx.connected_components(remainder):
            A = GSubset.from_indices(G, component)
            if A not in fragments:
                fragments[A] = make_fragment(G, S, A)

    result = sorted(fragments.values(), key=lambda f: f.vertices.sort_key)
    logger.debug(f"✂️ {G!r}: найдено {len(result)} фрагментов при κ={kappa}")
    return result


def fragment_is_genuine(graph: AdditionCayleyGraph, fragment: Fragment, kappa: int) -> bool:
    """Граница фрагмента, пересчитанная обходом графа, имеет размер κ и не покрывает G."""
    A = fragment.vertices
    if not A:
        return False
    neighborhood = graph.neighborhood(A)
    boundary = neighborhood.difference(A)
    covered = neighborhood.union(A)
    return boundary == fragment.boundary and len(boundary) == kappa and len(covered) < graph.group.order


def kappa_by_boundaries(G: GroupSpec, S: GSubset, max_order: int = 12) -> int:
    """
    Перебор всех A: min |(S−A)∖A| по непустым A с (S−A)∪A ≠ G.
    Для полного графа — |G|−1. Только для маленьких групп.
    """
    if G.order > max_order:
        raise ResourceLimitError(f"Перебор всех подмножеств доступен только при |G| <= {max_order}")
    if is_complete(G, S):
        return G.order - 1
    best: Optional[int] = None
    for bits in range(1, 1 << G.order):
        A = GSubset.from_bits(G, bits)
        neighborhood = diffset(G, S, A)
        if len(neighborhood.union(A)) == G.order:
            continue
        size = len(neighborhood.difference(A))
        if best is None or size < best:
            best = size
    return best


# === ФАКТОР-ГРАФ ===

def quotient_graph(G: GroupSpec, S: GSubset, H: Subgroup) -> nx.Graph:
    """Γ⁺_{G/H}(φ_H(S)) на номерах смежных классов по H."""
    space = coset_space(G, H)
    image = np.array(sorted(space.project(S)), dtype=np.int64)
    reps = np.array(space.representatives, dtype=np.int64)
    sums = space.labels[G.add_table[np.ix_(reps, reps)]]
    adjacent = np.isin(sums, image)

    graph = nx.Graph()
    graph.add_nodes_from(range(len(reps)))
    for i, j in zip(*np.nonzero(np.triu(adjacent))):
        graph.add_edge(int(i), int(j))
    return graph


def quotient_kappa(G: GroupSpec, S: GSubset, H: Subgroup) -> int:
    return vertex_connectivity(quotient_graph(G, S, H))


def dump_dot(graph: AdditionCayleyGraph, path: str) -> None:
    """DOT-дамп для отладки; петли выводятся как ребра в себя."""
    nx.nx_pydot.write_dot(graph.graph, path)
    logger.info(f"💾 Граф записан в {path}")
