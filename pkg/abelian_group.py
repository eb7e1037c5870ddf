# abelian_group.py
"""
Конечные абелевы группы Z_{n1} ⊕ ... ⊕ Z_{nk}, их элементы, подгруппы
и полная решетка подгрупп.

Элемент кодируется смешанным основанием (старший множитель первым),
все множества элементов хранятся как плотные булевы маски numpy.
Фактор-группы никогда не материализуются: все предикаты работают с парой
(G, H) через метки смежных классов.
"""

import logging
from functools import lru_cache
from math import prod
from typing import Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from config import config
from errors import InvalidChainError, InvalidInputError, InvalidSpecError, InvalidSubgroupError, ResourceLimitError

logger = logging.getLogger(__name__)


class Element(NamedTuple):
    """Элемент группы: канонический индекс и координаты по циклическим множителям."""
    index: int
    coords: Tuple[int, ...]


ElementLike = Union[Element, int, Sequence[int]]


class GroupSpec:
    """
    Группа Z_{n1} ⊕ ... ⊕ Z_{nk}, заданная последовательностью модулей.
    После построения неизменяема: таблицы сложения, обратных и удвоений
    доступны только для чтения.
    """

    def __init__(self, factors: Tuple[int, ...]):
        self.factors = factors
        self.order = prod(factors)

        strides = []
        acc = 1
        for n in reversed(factors):
            strides.append(acc)
            acc *= n
        self.strides = tuple(reversed(strides))

        moduli = np.array(factors, dtype=np.int64)
        radix = np.array(self.strides, dtype=np.int64)
        idx = np.arange(self.order, dtype=np.int64)
        if factors:
            coords = np.stack([(idx // s) % n for s, n in zip(self.strides, factors)], axis=1)
        else:
            coords = np.zeros((1, 0), dtype=np.int64)

        self.coords = coords
        self.add_table = ((coords[:, None, :] + coords[None, :, :]) % moduli) @ radix
        self.neg_table = ((-coords) % moduli) @ radix
        self.double_table = self.add_table[idx, idx]
        for table in (self.coords, self.add_table, self.neg_table, self.double_table):
            table.setflags(write=False)

    # === КОДИРОВАНИЕ ЭЛЕМЕНТОВ ===

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise InvalidInputError(f"Ожидалось {len(self.factors)} координат, получено {len(coords)}")
        for x, n in zip(coords, self.factors):
            if not 0 <= x < n:
                raise InvalidInputError(f"Координата {x} вне диапазона [0, {n})")
        return sum(x * s for x, s in zip(coords, self.strides))

    def decode(self, index: int) -> Tuple[int, ...]:
        if not 0 <= index < self.order:
            raise InvalidInputError(f"Индекс {index} вне диапазона [0, {self.order})")
        return tuple(int(x) for x in self.coords[index])

    def element(self, value: ElementLike) -> Element:
        """Приводит индекс, кортеж координат или Element к Element этой группы."""
        if isinstance(value, Element):
            index = value.index
        elif isinstance(value, (int, np.integer)) and not isinstance(value, bool):
            index = int(value)
        else:
            index = self.encode(tuple(int(x) for x in value))
        return Element(index, self.decode(index))

    def index_of(self, value: ElementLike) -> int:
        return self.element(value).index

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupSpec) and self.factors == other.factors

    def __hash__(self) -> int:
        return hash(self.factors)

    def __repr__(self) -> str:
        return f"GroupSpec({','.join(map(str, self.factors))})"


class GSubset:
    """
    Подмножество группы в виде плотной булевой маски по индексам элементов.
    Равенство и хеш определяются группой и составом, а не классом,
    поэтому подгруппа равна подмножеству с теми же элементами.
    """

    __slots__ = ("group", "mask", "_indices")

    def __init__(self, group: GroupSpec, mask):
        mask = np.array(mask, dtype=bool)
        if mask.shape != (group.order,):
            raise InvalidInputError(f"Маска должна иметь длину {group.order}, получено {mask.shape}")
        mask.setflags(write=False)
        self.group = group
        self.mask = mask
        self._indices = None

    @classmethod
    def from_indices(cls, group: GroupSpec, indices: Iterable[ElementLike]) -> "GSubset":
        mask = np.zeros(group.order, dtype=bool)
        for value in indices:
            mask[group.index_of(value)] = True
        return cls(group, mask)

    @classmethod
    def from_bits(cls, group: GroupSpec, bits: int) -> "GSubset":
        """Бит i числа bits отвечает за элемент с индексом i."""
        mask = np.fromiter(((bits >> i) & 1 for i in range(group.order)), dtype=bool, count=group.order)
        return cls(group, mask)

    @classmethod
    def empty(cls, group: GroupSpec) -> "GSubset":
        return cls(group, np.zeros(group.order, dtype=bool))

    @classmethod
    def full(cls, group: GroupSpec) -> "GSubset":
        return cls(group, np.ones(group.order, dtype=bool))

    @property
    def indices(self) -> np.ndarray:
        if self._indices is None:
            indices = np.flatnonzero(self.mask)
            indices.setflags(write=False)
            self._indices = indices
        return self._indices

    @property
    def members(self) -> Tuple[int, ...]:
        return tuple(int(i) for i in self.indices)

    @property
    def cardinality(self) -> int:
        return int(self.indices.size)

    @property
    def sort_key(self) -> Tuple[int, Tuple[int, ...]]:
        return (self.cardinality, self.members)

    def elements(self) -> List[Element]:
        return [self.group.element(i) for i in self.members]

    def __len__(self) -> int:
        return self.cardinality

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, value) -> bool:
        return bool(self.mask[self.group.index_of(value)])

    def __bool__(self) -> bool:
        return bool(self.mask.any())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GSubset)
            and self.group == other.group
            and bool(np.array_equal(self.mask, other.mask))
        )

    def __hash__(self) -> int:
        return hash((self.group.factors, self.mask.tobytes()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.group!r}, {set(self.members) or '{}'})"

    # === ТЕОРЕТИКО-МНОЖЕСТВЕННЫЕ ОПЕРАЦИИ ===

    def issubset(self, other: "GSubset") -> bool:
        return not bool((self.mask & ~other.mask).any())

    def union(self, other: "GSubset") -> "GSubset":
        return GSubset(self.group, self.mask | other.mask)

    def intersection(self, other: "GSubset") -> "GSubset":
        return GSubset(self.group, self.mask & other.mask)

    def difference(self, other: "GSubset") -> "GSubset":
        return GSubset(self.group, self.mask & ~other.mask)

    def complement(self) -> "GSubset":
        return GSubset(self.group, ~self.mask)


class Subgroup(GSubset):
    """Подгруппа: явное множество элементов, замкнутое относительно сложения."""

    __slots__ = ()

    @property
    def order(self) -> int:
        return self.cardinality


class CosetSpace(NamedTuple):
    """
    Разбиение G на смежные классы по H (реализация φ_H без построения G/H).
    labels[g]: номер смежного класса элемента g, representatives[i]:
    наименьший индекс в i-м классе.
    """
    base: GroupSpec
    modulus: Subgroup
    representatives: Tuple[int, ...]
    labels: np.ndarray

    def __len__(self) -> int:
        return len(self.representatives)

    def project(self, subset: GSubset) -> frozenset:
        """φ_H(S) как множество номеров смежных классов."""
        return frozenset(int(x) for x in np.unique(self.labels[subset.indices]))


class QuotientPredicates(NamedTuple):
    cyclic_2group: bool
    witness_generator: Optional[Element]
    elementary_2group_above: bool


# === ПОСТРОЕНИЕ ГРУППЫ ===

@lru_cache(maxsize=256)
def _cached_group(factors: Tuple[int, ...]) -> GroupSpec:
    logger.debug(f"🧮 Строим таблицы для группы {factors}")
    return GroupSpec(factors)


def make_group(factors: Sequence[int]) -> GroupSpec:
    """Создает группу по модулям циклических множителей; пустая последовательность — тривиальная группа."""
    checked = []
    for position, n in enumerate(factors):
        if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 2:
            raise InvalidSpecError(f"Модуль множителя #{position} должен быть целым >= 2, получено {n!r}")
        checked.append(int(n))
    return _cached_group(tuple(checked))


def canonical_factors(factors: Sequence[int]) -> Tuple[int, ...]:
    """Удобная нормализация: сортировка модулей по убыванию. Не инвариант."""
    return tuple(sorted(factors, reverse=True))


def exponent(G: GroupSpec) -> int:
    return int(np.lcm.reduce(np.array(G.factors, dtype=np.int64))) if G.factors else 1


# === АРИФМЕТИКА ЭЛЕМЕНТОВ ===

def elem_add(G: GroupSpec, a: ElementLike, b: ElementLike) -> Element:
    return G.element(int(G.add_table[G.index_of(a), G.index_of(b)]))


def elem_neg(G: GroupSpec, a: ElementLike) -> Element:
    return G.element(int(G.neg_table[G.index_of(a)]))


def elem_double(G: GroupSpec, a: ElementLike) -> Element:
    return G.element(int(G.double_table[G.index_of(a)]))


# === ПОДГРУППЫ ===

def trivial_subgroup(G: GroupSpec) -> Subgroup:
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    return Subgroup(G, mask)


def whole_group(G: GroupSpec) -> Subgroup:
    return Subgroup(G, np.ones(G.order, dtype=bool))


def is_closed(G: GroupSpec, subset: GSubset) -> bool:
    idx = subset.indices
    if not idx.size or not subset.mask[0]:
        return False
    return bool(subset.mask[G.add_table[np.ix_(idx, idx)]].all())


def subgroup_from_members(G: GroupSpec, members: Iterable[ElementLike]) -> Subgroup:
    """Проверяет замкнутость и возвращает Subgroup; иначе InvalidSubgroupError."""
    return require_subgroup(G, GSubset.from_indices(G, members))


def require_subgroup(G: GroupSpec, subset: GSubset) -> Subgroup:
    if subset.group != G:
        raise InvalidSubgroupError(f"Множество задано над {subset.group!r}, а не над {G!r}")
    if isinstance(subset, Subgroup):
        return subset
    if not is_closed(G, subset):
        raise InvalidSubgroupError(f"{set(subset.members)} не замкнуто относительно сложения в {G!r}")
    return Subgroup(G, subset.mask)


def double_image(G: GroupSpec) -> Subgroup:
    """2∗G = {2g : g ∈ G}."""
    mask = np.zeros(G.order, dtype=bool)
    mask[G.double_table] = True
    return Subgroup(G, mask)


def subgroup_generated(G: GroupSpec, gens: Iterable[ElementLike]) -> Subgroup:
    """Наименьшая подгруппа, содержащая gens (обход в ширину по прибавлению образующих)."""
    gen_idx = sorted({G.index_of(g) for g in gens})
    mask = np.zeros(G.order, dtype=bool)
    mask[0] = True
    frontier = np.array([0], dtype=np.int64)
    while gen_idx and frontier.size:
        reached = G.add_table[np.ix_(frontier, gen_idx)].ravel()
        fresh = np.unique(reached[~mask[reached]])
        mask[fresh] = True
        frontier = fresh
    return Subgroup(G, mask)


def join(G: GroupSpec, H: Subgroup, K: Subgroup) -> Subgroup:
    """H + K — снова подгруппа, поскольку группа абелева."""
    mask = np.zeros(G.order, dtype=bool)
    mask[G.add_table[np.ix_(H.indices, K.indices)].ravel()] = True
    return Subgroup(G, mask)


def coset_labels(G: GroupSpec, H: Subgroup) -> np.ndarray:
    """Для каждого g: наименьший индекс в g + H."""
    return G.add_table[:, H.indices].min(axis=1)


def coset_space(G: GroupSpec, H: GSubset) -> CosetSpace:
    H = require_subgroup(G, H)
    mins = coset_labels(G, H)
    representatives = tuple(int(r) for r in np.unique(mins))
    position = np.full(G.order, -1, dtype=np.int64)
    position[list(representatives)] = np.arange(len(representatives))
    labels = position[mins]
    labels.setflags(write=False)
    return CosetSpace(G, H, representatives, labels)


def coset_orders(G: GroupSpec, H: Subgroup) -> np.ndarray:
    """Порядок g + H в G/H для каждого g: наименьшее m >= 1 с m·g ∈ H."""
    idx = np.arange(G.order)
    orders = np.zeros(G.order, dtype=np.int64)
    multiple = np.zeros(G.order, dtype=np.int64)
    for m in range(1, G.order + 1):
        multiple = G.add_table[multiple, idx]
        fresh = (orders == 0) & H.mask[multiple]
        orders[fresh] = m
        if orders.all():
            break
    return orders


def exponent_of_quotient(G: GroupSpec, H: GSubset, over: Optional[GSubset] = None) -> int:
    """
    exp(G/H): наименьшее m >= 1 с m·g ∈ H для всех g.
    Если передан over (подгруппа G0 ⊇ H), считается exp(G0/H).
    """
    H = require_subgroup(G, H)
    orders = coset_orders(G, H)
    if over is not None:
        over = require_subgroup(G, over)
        if not H.issubset(over):
            raise InvalidChainError("exp(G0/H) требует H ≤ G0")
        orders = orders[over.indices]
    return int(np.lcm.reduce(orders))


def element_orders(G: GroupSpec) -> np.ndarray:
    return coset_orders(G, trivial_subgroup(G))


@lru_cache(maxsize=64)
def _subgroup_lattice(factors: Tuple[int, ...]) -> Tuple[Subgroup, ...]:
    G = make_group(factors)
    seen: Dict[bytes, Subgroup] = {}
    for g in range(G.order):
        H = subgroup_generated(G, [g])
        seen.setdefault(H.mask.tobytes(), H)

    frontier = list(seen.values())
    while frontier:
        current = list(seen.values())
        fresh = []
        for H in frontier:
            for K in current:
                J = join(G, H, K)
                key = J.mask.tobytes()
                if key not in seen:
                    seen[key] = J
                    fresh.append(J)
        frontier = fresh

    lattice = tuple(sorted(seen.values(), key=lambda H: H.sort_key))
    logger.debug(f"🔗 Решетка подгрупп {G!r}: {len(lattice)} подгрупп")
    return lattice


def all_subgroups(G: GroupSpec, max_order: Optional[int] = None) -> List[Subgroup]:
    """
    Все подгруппы ровно по одному разу, отсортированные по (порядок, состав).
    Циклические подгруппы попарно объединяются до неподвижной точки.
    """
    limit = config.MAX_GROUP_ORDER if max_order is None else max_order
    if G.order > limit:
        raise ResourceLimitError(f"Порядок группы {G.order} превышает лимит {limit} для перечисления подгрупп")
    return list(_subgroup_lattice(G.factors))


def subgroups_above(G: GroupSpec, L: Subgroup) -> List[Subgroup]:
    return list(_subgroups_above(G.factors, L.mask.tobytes()))


@lru_cache(maxsize=4096)
def _subgroups_above(factors: Tuple[int, ...], members: bytes) -> Tuple[Subgroup, ...]:
    G = make_group(factors)
    inside = np.frombuffer(members, dtype=bool)
    return tuple(K for K in all_subgroups(G) if K.mask[inside].all())


def smallest_nonzero_subgroup_order(G: GroupSpec) -> Optional[int]:
    """p из нижней оценки связности: наименьший порядок ненулевой подгруппы."""
    orders = [H.order for H in all_subgroups(G) if H.order > 1]
    return min(orders) if orders else None


def has_z4_plus_z2_subgroup(G: GroupSpec) -> bool:
    """Есть ли в G подгруппа, изоморфная Z4 ⊕ Z2."""
    return _has_z4_plus_z2(G.factors)


@lru_cache(maxsize=64)
def _has_z4_plus_z2(factors: Tuple[int, ...]) -> bool:
    G = make_group(factors)
    orders = element_orders(G)
    involutions = np.flatnonzero(orders == 2)
    for g in np.flatnonzero(orders == 4):
        cyclic = subgroup_generated(G, [int(g)])
        if (~cyclic.mask[involutions]).any():
            return True
    return False


# === АВТОМОРФИЗМЫ ===

def automorphisms(G: GroupSpec, search_limit: Optional[int] = None) -> np.ndarray:
    """
    Автоморфизмы G как перестановки индексов элементов, по строке на автоморфизм.
    Образы базисных элементов перебираются полностью; если кандидатов больше
    search_limit, возвращается только тождественный.
    """
    limit = config.AUTOMORPHISM_SEARCH_LIMIT if search_limit is None else search_limit
    return _automorphism_table(G.factors, limit)


@lru_cache(maxsize=64)
def _automorphism_table(factors: Tuple[int, ...], limit: int) -> np.ndarray:
    G = make_group(factors)
    identity = np.arange(G.order, dtype=np.int64)[None, :]
    if not factors:
        return identity

    # базисный элемент e_i можно отправить только в элемент порядка, делящего n_i
    orders = element_orders(G)
    candidates = [np.flatnonzero(n % orders == 0) for n in factors]
    if prod(len(c) for c in candidates) > limit:
        logger.debug(f"🔁 {G!r}: перебор автоморфизмов превышает лимит {limit}, берем только тождественный")
        return identity

    images = np.stack(np.meshgrid(*candidates, indexing="ij"), axis=-1).reshape(-1, len(factors))
    moduli = np.array(factors, dtype=np.int64)
    radix = np.array(G.strides, dtype=np.int64)
    # φ(x) = Σ x_i·φ(e_i), по координатам
    basis = G.coords[images]
    mapped = (np.einsum("xi,mij->mxj", G.coords, basis) % moduli) @ radix
    bijective = (np.sort(mapped, axis=1) == identity).all(axis=1)

    table = mapped[bijective]
    table.setflags(write=False)
    logger.debug(f"🔁 {G!r}: {len(table)} автоморфизмов")
    return table


def _quotient_predicates(G: GroupSpec, L: Subgroup, G0: Subgroup, orders: np.ndarray) -> QuotientPredicates:
    index = G0.order // L.order
    witness = None
    if index & (index - 1) == 0:
        candidates = G0.indices[orders[G0.indices] == index]
        if candidates.size:
            witness = G.element(int(candidates[0]))
    elementary_above = bool(G0.mask[G.double_table].all())
    return QuotientPredicates(witness is not None, witness, elementary_above)


def quotient_predicates(G: GroupSpec, L: GSubset, G0: GSubset) -> QuotientPredicates:
    """
    cyclic_2group: G0/L — циклическая 2-группа (witness_generator порождает ее по модулю L);
    elementary_2group_above: G/G0 — элементарная абелева 2-группа.
    """
    L = require_subgroup(G, L)
    G0 = require_subgroup(G, G0)
    if not L.issubset(G0):
        raise InvalidChainError(f"{set(L.members)} не содержится в {set(G0.members)}")
    return _quotient_predicates(G, L, G0, coset_orders(G, L))


# === ПЕРЕЧИСЛЕНИЕ ТИПОВ ГРУПП ===

def _factorize(n: int) -> Dict[int, int]:
    result: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            result[p] = result.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        result[n] = result.get(n, 0) + 1
    return result


def _partitions(n: int, largest: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield (part,) + rest


def group_types_of_order(n: int) -> List[Tuple[int, ...]]:
    """Все типы абелевых групп порядка n как списки примарных циклических множителей."""
    choices: List[List[Tuple[int, ...]]] = [[()]]
    for p, e in sorted(_factorize(n).items()):
        choices.append([tuple(p ** k for k in parts) for parts in _partitions(e)])

    types = [()]
    for options in choices[1:]:
        types = [prefix + option for prefix in types for option in options]
    return sorted((canonical_factors(t) for t in types), reverse=True)


def enumerate_group_types(max_order: int) -> List[Tuple[int, ...]]:
    result = []
    for n in range(1, max_order + 1):
        result.extend(group_types_of_order(n))
    return result
