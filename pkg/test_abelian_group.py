# test_abelian_group.py
"""
Тесты группы Z_{n1} ⊕ ... ⊕ Z_{nk}: кодирование элементов, подгруппы,
смежные классы, факторы и перечисление типов групп.
"""

import numpy as np
import pytest

from abelian_group import (
    GSubset,
    Subgroup,
    all_subgroups,
    automorphisms,
    coset_orders,
    coset_space,
    double_image,
    elem_add,
    elem_double,
    elem_neg,
    element_orders,
    enumerate_group_types,
    exponent,
    exponent_of_quotient,
    group_types_of_order,
    has_z4_plus_z2_subgroup,
    is_closed,
    make_group,
    quotient_predicates,
    smallest_nonzero_subgroup_order,
    subgroup_from_members,
    subgroup_generated,
    subgroups_above,
    trivial_subgroup,
    whole_group,
)
from errors import InvalidChainError, InvalidInputError, InvalidSpecError, InvalidSubgroupError, ResourceLimitError


# === КОДИРОВАНИЕ ===

def test_mixed_radix_encoding():
    G = make_group([4, 2])
    assert G.order == 8
    assert G.strides == (2, 1)
    assert G.encode((1, 0)) == 2
    assert G.encode((3, 1)) == 7
    assert G.decode(5) == (2, 1)
    assert G.element((2, 1)).index == 5


def test_trivial_group():
    G = make_group([])
    assert G.order == 1
    assert G.element(0).coords == ()
    assert exponent(G) == 1
    assert len(all_subgroups(G)) == 1


@pytest.mark.parametrize("factors", [[1], [0], [4, 1], [-3]])
def test_invalid_factors_rejected(factors):
    with pytest.raises(InvalidSpecError):
        make_group(factors)


def test_encode_out_of_range():
    G = make_group([4, 2])
    with pytest.raises(InvalidInputError):
        G.encode((4, 0))
    with pytest.raises(InvalidInputError):
        G.encode((1,))
    with pytest.raises(InvalidInputError):
        G.decode(8)


def test_tables_are_read_only():
    G = make_group([6])
    with pytest.raises(ValueError):
        G.add_table[0, 0] = 1


def test_element_arithmetic():
    G = make_group([4, 2])
    assert elem_add(G, (3, 1), (1, 1)).coords == (0, 0)
    assert elem_neg(G, (1, 1)).coords == (3, 1)
    assert elem_double(G, (3, 1)).coords == (2, 0)


def test_exponent():
    assert exponent(make_group([4, 6])) == 12
    assert exponent(make_group([2, 2, 2])) == 2


# === ПОДМНОЖЕСТВА ===

def test_subset_equality_ignores_class():
    G = make_group([4])
    H = subgroup_from_members(G, [0, 2])
    assert H == GSubset.from_indices(G, [2, 0])
    assert hash(H) == hash(GSubset.from_indices(G, [0, 2]))


def test_subset_from_bits():
    G = make_group([4])
    assert GSubset.from_bits(G, 0b1010).members == (1, 3)
    assert not GSubset.from_bits(G, 0)


def test_subset_set_operations():
    G = make_group([6])
    A = GSubset.from_indices(G, [0, 1, 2])
    B = GSubset.from_indices(G, [2, 3])
    assert A.union(B).members == (0, 1, 2, 3)
    assert A.intersection(B).members == (2,)
    assert A.difference(B).members == (0, 1)
    assert A.complement().members == (3, 4, 5)
    assert GSubset.from_indices(G, [1]).issubset(A)
    assert 2 in A and 5 not in A


# === ПОДГРУППЫ ===

@pytest.mark.parametrize("factors, count", [
    ([2, 2], 5),
    ([4, 2], 8),
    ([5], 2),
    ([6], 4),
    ([8], 4),
    ([2, 2, 2], 16),
    ([], 1),
])
def test_subgroup_counts(factors, count):
    assert len(all_subgroups(make_group(factors))) == count


def closed_subsets_by_masks(G):
    """Все подмножества с 0, замкнутые относительно сложения, прямым перебором масок."""
    n = G.order
    bits = np.arange(1 << (n - 1), dtype=np.int64)
    masks = np.ones((bits.size, n), dtype=bool)
    masks[:, 1:] = (bits[:, None] >> np.arange(n - 1)) & 1
    closed = np.ones(bits.size, dtype=bool)
    for a in range(n):
        for b in range(a, n):
            closed &= ~(masks[:, a] & masks[:, b]) | masks[:, G.add_table[a, b]]
    return masks[closed]


@pytest.mark.parametrize("factors", enumerate_group_types(16))
def test_subgroups_match_closed_subsets(factors):
    G = make_group(factors)
    found = closed_subsets_by_masks(G)
    assert all(is_closed(G, GSubset(G, mask)) for mask in found)
    expected = {tuple(int(i) for i in np.flatnonzero(mask)) for mask in found}
    assert {H.members for H in all_subgroups(G)} == expected
    assert len(all_subgroups(G)) == len(expected)


@pytest.mark.parametrize("factors", enumerate_group_types(16))
def test_lagrange_chain(factors):
    G = make_group(factors)
    subgroups = all_subgroups(G)
    for H in subgroups:
        assert G.order % H.order == 0
        for K in subgroups:
            if H.issubset(K):
                assert K.order % H.order == 0


def test_subgroups_sorted_and_closed():
    G = make_group([4, 2])
    subgroups = all_subgroups(G)
    assert subgroups[0] == trivial_subgroup(G)
    assert subgroups[-1] == whole_group(G)
    keys = [H.sort_key for H in subgroups]
    assert keys == sorted(keys)
    assert all(is_closed(G, H) for H in subgroups)
    assert all(isinstance(H, Subgroup) for H in subgroups)


def test_all_subgroups_resource_limit():
    with pytest.raises(ResourceLimitError):
        all_subgroups(make_group([16]), max_order=8)


def test_subgroup_from_members_requires_closure():
    G = make_group([4])
    with pytest.raises(InvalidSubgroupError):
        subgroup_from_members(G, [0, 1])
    with pytest.raises(InvalidSubgroupError):
        subgroup_from_members(G, [2])


def test_subgroup_generated():
    G = make_group([4, 2])
    assert subgroup_generated(G, [(1, 0)]).members == (0, 2, 4, 6)
    assert subgroup_generated(G, [(2, 0), (0, 1)]).members == (0, 1, 4, 5)
    assert subgroup_generated(G, []).members == (0,)


def test_double_image():
    assert double_image(make_group([4, 2])).members == (0, 4)
    assert double_image(make_group([5])) == whole_group(make_group([5]))


def test_subgroups_above():
    G = make_group([8])
    L = subgroup_from_members(G, [0, 4])
    assert [H.members for H in subgroups_above(G, L)] == [(0, 4), (0, 2, 4, 6), tuple(range(8))]


# === СМЕЖНЫЕ КЛАССЫ И ФАКТОРЫ ===

def test_coset_space():
    G = make_group([4])
    space = coset_space(G, subgroup_from_members(G, [0, 2]))
    assert space.representatives == (0, 1)
    assert list(space.labels) == [0, 1, 0, 1]
    assert len(space) == 2
    assert space.project(GSubset.from_indices(G, [1, 3])) == frozenset({1})


def test_coset_orders_and_exponents():
    G = make_group([8])
    L = subgroup_from_members(G, [0, 4])
    assert list(coset_orders(G, L)) == [1, 4, 2, 4, 1, 4, 2, 4]
    assert exponent_of_quotient(G, L) == 4
    G0 = subgroup_from_members(G, [0, 2, 4, 6])
    assert exponent_of_quotient(G, L, over=G0) == 2
    assert list(element_orders(make_group([6]))) == [1, 6, 3, 2, 3, 6]


def test_exponent_of_quotient_requires_chain():
    G = make_group([4, 2])
    with pytest.raises(InvalidChainError):
        exponent_of_quotient(G, subgroup_from_members(G, [0, 1]), over=subgroup_from_members(G, [0, 4]))


def test_quotient_predicates():
    G = make_group([4, 2])
    L = trivial_subgroup(G)
    G0 = subgroup_from_members(G, [0, 2, 4, 6])
    predicates = quotient_predicates(G, L, G0)
    assert predicates.cyclic_2group
    assert predicates.witness_generator.coords == (1, 0)
    assert predicates.elementary_2group_above

    klein = subgroup_from_members(G, [0, 1, 4, 5])
    assert not quotient_predicates(G, L, klein).cyclic_2group

    with pytest.raises(InvalidChainError):
        quotient_predicates(G, subgroup_from_members(G, [0, 1]), G0)


def test_smallest_nonzero_subgroup_order():
    assert smallest_nonzero_subgroup_order(make_group([6])) == 2
    assert smallest_nonzero_subgroup_order(make_group([9])) == 3
    assert smallest_nonzero_subgroup_order(make_group([])) is None


@pytest.mark.parametrize("factors, expected", [
    ([4, 2], True),
    ([4, 4], True),
    ([8, 2], True),
    ([8], False),
    ([2, 2, 2], False),
    ([12], False),
])
def test_has_z4_plus_z2_subgroup(factors, expected):
    assert has_z4_plus_z2_subgroup(make_group(factors)) is expected


# === ТИПЫ ГРУПП ===

def test_group_types_of_order():
    assert group_types_of_order(1) == [()]
    assert group_types_of_order(8) == [(8,), (4, 2), (2, 2, 2)]
    assert len(group_types_of_order(16)) == 5
    assert sorted(group_types_of_order(12)) == [(3, 2, 2), (4, 3)]


def test_enumerate_group_types():
    types = enumerate_group_types(8)
    assert types[0] == ()
    assert len(types) == 1 + 1 + 1 + 2 + 1 + 1 + 1 + 3
    assert all(int(np.prod(t)) <= 8 for t in types)


# === АВТОМОРФИЗМЫ ===

@pytest.mark.parametrize("factors, count", [
    ([], 1),
    ([2, 2], 6),
    ([6], 2),
    ([4, 3], 4),
    ([4, 2], 8),
    ([3, 3], 48),
    ([2, 2, 2], 168),
    ([16], 8),
])
def test_automorphism_counts(factors, count):
    G = make_group(factors)
    table = automorphisms(G)
    assert len(table) == count
    identity = np.arange(G.order)
    assert any((row == identity).all() for row in table)
    for row in table:
        assert sorted(row.tolist()) == identity.tolist()
        # φ(a + b) = φ(a) + φ(b)
        assert (row[G.add_table] == G.add_table[row[:, None], row[None, :]]).all()


def test_automorphism_search_limit():
    G = make_group([2, 2, 2])
    table = automorphisms(G, search_limit=10)
    assert table.tolist() == [list(range(8))]


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
