# verification.py
"""
Исчерпывающая проверка формулы против оракула.

Работа режется на единицы (тип группы, порция подмножеств). Порции
не зависят от числа воркеров, а результаты сливаются в порядке единиц,
поэтому при фиксированном seed итог одинаков для любого JOBS.
"""

import hashlib
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Any, Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from abelian_group import GroupSpec, GSubset, automorphisms, double_image, enumerate_group_types, make_group
from cayley_graph import build_graph, enumerate_fragments, fragment_is_genuine, is_complete, kappa_oracle, quotient_kappa
from config import config
from connectivity import Branch, corollary_predicates, kappa_formula, lstar_qualifying, report_to_dict
from errors import ResourceLimitError, TheoremViolationError
from sumsets import diffset, period, quotient_image, saturate
from text_formats import format_group_spec, format_subset
from verify_logger import VerificationLog

logger = logging.getLogger(__name__)

# Категории нарушений, по которым считается Summary
MISMATCH = "oracle_mismatch"
THEOREM2 = "theorem2"
FRAGMENT = "fragment"
COROLLARY_PREFIX = "corollary:"


@dataclass
class Summary:
    instances: int = 0
    mismatches: int = 0
    theorem2_violations: int = 0
    corollary_failures: int = 0
    fragment_failures: int = 0
    interrupted: bool = False
    counterexamples: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def clean(self) -> bool:
        return not (self.mismatches or self.theorem2_violations or self.corollary_failures or self.fragment_failures)

    def merge(self, other: "Summary") -> None:
        self.instances += other.instances
        self.mismatches += other.mismatches
        self.theorem2_violations += other.theorem2_violations
        self.corollary_failures += other.corollary_failures
        self.fragment_failures += other.fragment_failures
        self.interrupted = self.interrupted or other.interrupted
        self.counterexamples.extend(other.counterexamples)

    def add_instance(self, failures: List[str], record: Optional[Dict[str, Any]]) -> None:
        self.instances += 1
        self.mismatches += failures.count(MISMATCH)
        self.theorem2_violations += failures.count(THEOREM2)
        self.fragment_failures += failures.count(FRAGMENT)
        self.corollary_failures += sum(1 for f in failures if f.startswith(COROLLARY_PREFIX))
        if failures and record is not None:
            self.counterexamples.append(record)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("counterexamples")
        return data


class WorkUnit(NamedTuple):
    factors: Tuple[int, ...]
    chunk: int
    exhaustive: bool
    start: int  # первая битовая маска (только для exhaustive)
    count: int  # число подмножеств в порции
    seed: int


class InstanceResult(NamedTuple):
    failures: List[str]
    record: Optional[Dict[str, Any]]


# === ПЛАНИРОВАНИЕ ===

def _derive_seed(seed: int, factors: Sequence[int], chunk: int) -> int:
    digest = hashlib.blake2b(f"{seed}|{format_group_spec(make_group(factors))}|{chunk}".encode(), digest_size=8)
    return int.from_bytes(digest.digest(), "big")


def plan_units(factors: Sequence[int], sample_threshold: int, seed: int,
               chunk_size: Optional[int] = None, sample_size: Optional[int] = None) -> List[WorkUnit]:
    """
    При |G| <= sample_threshold — все собственные подмножества (маски 0..2^|G|−2),
    иначе — sample_size случайных подмножеств. Нарезка на порции зависит только от chunk_size.
    """
    factors = tuple(factors)
    chunk_size = chunk_size or config.CHUNK_SIZE
    sample_size = sample_size or config.SAMPLE_SIZE
    order = make_group(factors).order

    exhaustive = order <= sample_threshold
    total = (1 << order) - 1 if exhaustive else sample_size
    units = []
    for chunk, start in enumerate(range(0, total, chunk_size)):
        count = min(chunk_size, total - start)
        units.append(WorkUnit(factors, chunk, exhaustive, start, count, _derive_seed(seed, factors, chunk)))
    return units


def unit_subsets(unit: WorkUnit) -> Iterator[GSubset]:
    G = make_group(unit.factors)
    if unit.exhaustive:
        for bits in range(unit.start, unit.start + unit.count):
            yield GSubset.from_bits(G, bits)
        return

    rng = np.random.default_rng(unit.seed)
    rows = rng.integers(0, 2, size=(unit.count, G.order)).astype(bool)
    for row in rows:
        if row.all():
            continue
        yield GSubset(G, row)


# === ФАКТЫ ОРАКУЛА ===

class OracleFacts(NamedTuple):
    kappa: int
    fragments_hold: bool  # свойства фрагментов при κ < |S|; True, если проверка не нужна


def _less_s_holds(G: GroupSpec, S: GSubset, A: GSubset, kappa: int, quotients: Dict[bytes, int]) -> bool:
    """Свойства фрагмента A при κ < |S|: A ⊆ S−A, A+H = A, κ = |S+H|−|H|, κ(G/H) = |φ_H(S)|−1."""
    neighborhood = diffset(G, S, A)
    if not A.issubset(neighborhood):
        return False
    H = period(G, neighborhood)
    if saturate(G, A, H) != A:
        return False
    if len(saturate(G, S, H)) - H.order != kappa:
        return False
    # у разных фрагментов H обычно одна и та же
    key = H.mask.tobytes()
    if key not in quotients:
        quotients[key] = quotient_kappa(G, S, H)
    return quotients[key] == len(quotient_image(G, S, H)) - 1


def oracle_facts(G: GroupSpec, S: GSubset) -> OracleFacts:
    """Все, что харнесс считает через max-flow: κ и проверка фрагментов оракула."""
    oracle = kappa_oracle(G, S)
    if oracle >= len(S) or is_complete(G, S):
        return OracleFacts(oracle, True)
    quotients: Dict[bytes, int] = {}
    holds = all(
        _less_s_holds(G, S, fragment.vertices, oracle, quotients)
        for fragment in enumerate_fragments(G, S, kappa=oracle)
    )
    return OracleFacts(oracle, holds)


@lru_cache(maxsize=64)
def _orbit_weights(factors: Tuple[int, ...], search_limit: int) -> Optional[np.ndarray]:
    G = make_group(factors)
    if G.order > 62:
        return None
    # x ↦ α(x) + g переводит Γ(S) в Γ(α(S) + 2g), поэтому S и α(S) + t, t ∈ 2∗G, изоморфны
    autos = automorphisms(G, search_limit)
    doubles = double_image(G).indices
    maps = G.add_table[autos[:, :, None], doubles[None, None, :]]
    maps = maps.transpose(0, 2, 1).reshape(-1, G.order)
    return np.left_shift(np.int64(1), maps)


def orbit_key(G: GroupSpec, S: GSubset) -> Optional[int]:
    """Наименьшая битовая маска в орбите S; None для групп, где ключ не помещается в int64."""
    weights = _orbit_weights(G.factors, config.AUTOMORPHISM_SEARCH_LIMIT)
    if weights is None:
        return None
    return int(weights[:, S.mask].sum(axis=1).min())


class OracleCache:
    """
    Факты оракула по орбитам S внутри одной группы. Граф и его фрагменты
    переносятся изоморфизмом, поэтому max-flow считается один раз на орбиту,
    а формула и следствия по-прежнему проверяются на каждом S.
    """

    def __init__(self):
        self.factors: Optional[Tuple[int, ...]] = None
        self.entries: Dict[int, OracleFacts] = {}
        self.hits = 0

    def reset(self) -> None:
        self.factors = None
        self.entries = {}
        self.hits = 0

    def lookup(self, G: GroupSpec, S: GSubset) -> OracleFacts:
        if G.factors != self.factors:
            self.reset()
            self.factors = G.factors
        key = orbit_key(G, S)
        if key is None:
            return oracle_facts(G, S)
        facts = self.entries.get(key)
        if facts is None:
            facts = oracle_facts(G, S)
            self.entries[key] = facts
        else:
            self.hits += 1
        return facts


_oracle_cache = OracleCache()


# === ПРОВЕРКА ОДНОГО ЭКЗЕМПЛЯРА ===

def check_instance(G: GroupSpec, S: GSubset, cache: Optional[OracleCache] = None) -> InstanceResult:
    failures: List[str] = []
    facts = cache.lookup(G, S) if cache is not None else oracle_facts(G, S)
    oracle = facts.kappa
    n = len(S)
    record: Dict[str, Any] = {
        "group": format_group_spec(G),
        "subset": format_subset(S),
        "oracle": oracle,
    }

    try:
        report = kappa_formula(G, S)
    except TheoremViolationError as e:
        record.update(report=None, error=str(e), failures=[THEOREM2])
        return InstanceResult([THEOREM2], record)
    record["report"] = report_to_dict(report)

    if report.kappa != oracle:
        failures.append(MISMATCH)

    if report.families is not None:
        qualifying = lstar_qualifying(G, S, report.families.lstar)
    else:
        qualifying = lstar_qualifying(G, S) if n else []
    if len(qualifying) > 1:
        failures.append(THEOREM2)
    if report.branch is Branch.LAMBDA_STAR:
        if report.eta is not None and report.eta < n:
            failures.append(THEOREM2)
        if report.lambda_ != report.kappa:
            failures.append(THEOREM2)

    checks = corollary_predicates(G, S, report)
    failures.extend(COROLLARY_PREFIX + name for name in checks.failures())

    if report.fragment is not None and not fragment_is_genuine(build_graph(G, S), report.fragment, report.kappa):
        failures.append(FRAGMENT)

    if not facts.fragments_hold:
        failures.append(FRAGMENT)

    record["failures"] = failures
    return InstanceResult(failures, record if failures else None)


def run_unit(unit: WorkUnit) -> Summary:
    summary = Summary()
    G = make_group(unit.factors)
    cache = _oracle_cache if config.ORBIT_CACHE else None
    for S in unit_subsets(unit):
        result = check_instance(G, S, cache)
        summary.add_instance(result.failures, result.record)
    logger.debug(f"🧮 {G!r} порция {unit.chunk}: {summary.instances} экземпляров")
    return summary


# === ЗАПУСК ===

def run_verification(max_order: int, sample_threshold: Optional[int] = None, seed: Optional[int] = None,
                     jobs: Optional[int] = None, log: Optional[VerificationLog] = None) -> Summary:
    """
    Перебирает все типы абелевых групп порядка <= max_order. При Ctrl+C
    возвращает частичный итог с interrupted=True.
    """
    sample_threshold = config.SAMPLE_THRESHOLD if sample_threshold is None else sample_threshold
    seed = config.SEED if seed is None else seed
    jobs = config.JOBS if jobs is None else jobs
    log = log or VerificationLog()

    if max_order > config.ORACLE_MAX_ORDER:
        raise ResourceLimitError(f"--max-order {max_order} превышает лимит оракула {config.ORACLE_MAX_ORDER}")

    group_types = enumerate_group_types(max_order)
    log.start_run(len(group_types), max_order, jobs)

    _oracle_cache.reset()
    summary = Summary()
    executor = ProcessPoolExecutor(max_workers=jobs) if jobs > 1 else None
    try:
        for factors in group_types:
            units = plan_units(factors, sample_threshold, seed)
            if executor is not None:
                partials = executor.map(run_unit, units)
            else:
                partials = map(run_unit, units)

            group_summary = Summary()
            for partial in partials:
                group_summary.merge(partial)
            for record in group_summary.counterexamples:
                log.record_counterexample(record)
            summary.merge(group_summary)
            log.log_group_done(factors, group_summary.instances, len(group_summary.counterexamples))
    except KeyboardInterrupt:
        logger.warning("⛔ Проверка прервана, итог частичный")
        summary.interrupted = True
    finally:
        if executor is not None:
            executor.shutdown(wait=not summary.interrupted, cancel_futures=True)
        _oracle_cache.reset()

    log.log_summary(summary.to_dict())
    return summary
