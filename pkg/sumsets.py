# sumsets.py
"""
Арифметика сумм множеств над GroupSpec: A±B, насыщение S+H,
периоды и число представлений ν_c(A,B), μ(A,B).

Соглашения о пустых множествах: сумма с ∅ пуста, период ∅ равен G.
"""

import logging
from typing import Optional

import numpy as np

from abelian_group import (
    ElementLike,
    GroupSpec,
    GSubset,
    Subgroup,
    coset_space,
    require_subgroup,
    whole_group,
)
from errors import InvalidInputError

logger = logging.getLogger(__name__)

__all__ = [
    "GSubset",
    "sumset",
    "diffset",
    "saturate",
    "period",
    "rep_count",
    "rep_counts",
    "min_rep",
    "quotient_image",
    "kneser_identity_holds",
]


def _pairwise(G: GroupSpec, A: GSubset, B_idx: np.ndarray) -> np.ndarray:
    return G.add_table[np.ix_(A.indices, B_idx)].ravel()


def sumset(G: GroupSpec, A: GSubset, B: GSubset) -> GSubset:
    """A + B = {a + b : a ∈ A, b ∈ B}."""
    mask = np.zeros(G.order, dtype=bool)
    mask[_pairwise(G, A, B.indices)] = True
    return GSubset(G, mask)


def diffset(G: GroupSpec, A: GSubset, B: GSubset) -> GSubset:
    """A − B = {a − b : a ∈ A, b ∈ B}."""
    mask = np.zeros(G.order, dtype=bool)
    mask[_pairwise(G, A, G.neg_table[B.indices])] = True
    return GSubset(G, mask)


def saturate(G: GroupSpec, S: GSubset, H: GSubset) -> GSubset:
    """S + H: объединение всех H-смежных классов, пересекающих S."""
    return sumset(G, S, require_subgroup(G, H))


def period(G: GroupSpec, S: GSubset) -> Subgroup:
    """π(S) = {g ∈ G : S + g = S}; π(∅) = π(G) = G."""
    if not S:
        return whole_group(G)
    # столбец g: все ли s + g лежат в S
    stable = S.mask[G.add_table[S.indices, :]].all(axis=0)
    return Subgroup(G, stable)


def rep_counts(G: GroupSpec, A: GSubset, B: GSubset) -> np.ndarray:
    """Вектор ν_c(A,B) по всем c ∈ G."""
    sums = _pairwise(G, A, B.indices)
    return np.bincount(sums, minlength=G.order)


def rep_count(G: GroupSpec, A: GSubset, B: GSubset, c: ElementLike) -> int:
    return int(rep_counts(G, A, B)[G.index_of(c)])


def min_rep(G: GroupSpec, A: GSubset, B: GSubset) -> int:
    """μ(A,B) = min ν_c(A,B) по c ∈ A + B."""
    counts = rep_counts(G, A, B)
    positive = counts[counts > 0]
    if not positive.size:
        raise InvalidInputError("μ(A,B) не определено: A + B пусто")
    return int(positive.min())


def quotient_image(G: GroupSpec, S: GSubset, H: GSubset) -> frozenset:
    """φ_H(S) как множество номеров смежных классов по H."""
    return coset_space(G, H).project(S)


def kneser_identity_holds(G: GroupSpec, A: GSubset, B: GSubset) -> Optional[bool]:
    """
    Проверка теоремы Кнезера на конкретной паре.
    None — если условие |A+B| <= |A|+|B|-1 не выполнено (или A, B пусты).
    """
    if not A or not B:
        return None
    total = sumset(G, A, B)
    if len(total) > len(A) + len(B) - 1:
        return None
    H = period(G, total)
    return len(total) == len(saturate(G, A, H)) + len(saturate(G, B, H)) - H.order
