# connectivity.py
"""
Замкнутая формула для κ(Γ⁺_G(S)).

Семейства подгрупп:
  ℋ_G(S):  H с (S + 2∗G) ∩ H ≠ ∅ и S + H ≠ G;
  ℒ_G(S):  L, для которых есть L ≤ G0 и g0 ∈ G0 с |G0/L| четным > 2
            и S + L = (G∖G0) ∪ (g0 + L);
  ℒ*_G(S): то же плюс G0/L циклическая 2-группа, порожденная g0, G/G0 элементарна,
            exp(G/L) = exp(G0/L), S ∩ (g0 + L) не лежит в собственном классе L.
η, λ, λ*: минимумы |S+K| − |K| по семействам; пустой минимум = +∞ (None).

κ = min{η, λ, |S|}; ветка выбирается по единственной L ∈ ℒ* со счетом <= |S|−1,
иначе κ = min{η, |S|}. Каждый отчет несет явный фрагмент, реализующий разрез.
"""

import json
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, NamedTuple, Optional

import numpy as np

from abelian_group import (
    Element,
    ElementLike,
    GroupSpec,
    GSubset,
    Subgroup,
    _quotient_predicates,
    all_subgroups,
    coset_orders,
    double_image,
    exponent_of_quotient,
    has_z4_plus_z2_subgroup,
    require_subgroup,
    smallest_nonzero_subgroup_order,
    subgroup_from_members,
    subgroup_generated,
    subgroups_above,
)
from cayley_graph import Fragment, is_complete, is_connected, make_fragment
from errors import InvalidChainError, PreconditionError, TheoremViolationError
from sumsets import saturate, sumset
from text_formats import format_element, format_group_spec, format_subset, parse_element, parse_group_spec, parse_subset

logger = logging.getLogger(__name__)


class FamilyTag(str, Enum):
    H = "H-family"
    L = "L-family"
    LSTAR = "Lstar-family"


class Branch(str, Enum):
    COMPLETE = "complete"
    DEGREE = "degree"
    ETA = "eta"
    LAMBDA_STAR = "lambda-star"


@dataclass(frozen=True)
class LWitness:
    G0: Subgroup
    g0: Element


@dataclass(frozen=True)
class FamilyEntry:
    subgroup: Subgroup
    score: int
    family: FamilyTag
    witness: Optional[LWitness] = None

    @property
    def sort_key(self):
        # счет, затем |H|, затем лексикографически по составу
        return (self.score, self.subgroup.order, self.subgroup.members)


@dataclass(frozen=True)
class KappaReport:
    group: GroupSpec
    connection_set: GSubset
    kappa: int
    branch: Branch
    eta: Optional[int] = None
    lambda_: Optional[int] = None
    lambda_star: Optional[int] = None
    witness_entry: Optional[FamilyEntry] = None
    fragment: Optional[Fragment] = None
    # семейства, из которых выбрана ветка; в JSON не попадают
    families: Optional["Families"] = field(default=None, compare=False, repr=False)


class Check(NamedTuple):
    applicable: bool
    holds: bool

    @property
    def failed(self) -> bool:
        return self.applicable and not self.holds


@dataclass(frozen=True)
class CorollaryChecks:
    sover2: Check
    charg: Check
    kappalarge: Check
    two_ast_s: Check
    theorem_simple: Check
    connected_small_s: Check

    def failures(self) -> List[str]:
        return [name for name, check in self.__dict__.items() if check.failed]


def opt_min(*values: Optional[int]) -> Optional[int]:
    """Минимум с правилом: None означает +∞."""
    present = [v for v in values if v is not None]
    return min(present) if present else None


def score(G: GroupSpec, S: GSubset, H: Subgroup) -> int:
    """|S + H| − |H|."""
    return len(saturate(G, S, H)) - H.order


# === СЕМЕЙСТВО ℋ ===

def h_family(G: GroupSpec, S: GSubset) -> List[FamilyEntry]:
    shifted = sumset(G, S, double_image(G))
    entries = []
    for H in all_subgroups(G):
        if not (shifted.mask & H.mask).any():
            continue
        saturated = saturate(G, S, H)
        if len(saturated) == G.order:
            continue
        entries.append(FamilyEntry(H, len(saturated) - H.order, FamilyTag.H))
    return sorted(entries, key=lambda e: e.sort_key)


def eta(G: GroupSpec, S: GSubset) -> Optional[int]:
    return opt_min(*(e.score for e in h_family(G, S)))


# === СЕМЕЙСТВА ℒ И ℒ* ===

def _single_coset_inside(G: GroupSpec, saturated: GSubset, L: Subgroup, G0: Subgroup) -> Optional[np.ndarray]:
    """
    Условие S + L = (G∖G0) ∪ (g0 + L): возвращает маску класса g0 + L или None.
    """
    if not saturated.mask[~G0.mask].all():
        return None
    inside = saturated.mask & G0.mask
    # S + L — объединение L-классов, значит внутри G0 ровно один класс
    if int(inside.sum()) != L.order:
        return None
    return inside


def _candidate_tops(G: GroupSpec, L: Subgroup, saturated: GSubset) -> List[Subgroup]:
    # из S + L = (G∖G0) ∪ (g0 + L) порядок G0 однозначно определяется |S + L|
    target = G.order - len(saturated) + L.order
    return [G0 for G0 in subgroups_above(G, L) if G0.order == target]


def l_family(G: GroupSpec, S: GSubset) -> List[FamilyEntry]:
    entries = []
    for L in all_subgroups(G):
        saturated = saturate(G, S, L)
        for G0 in _candidate_tops(G, L, saturated):
            index = G0.order // L.order
            if index % 2 or index <= 2:
                continue
            coset = _single_coset_inside(G, saturated, L, G0)
            if coset is None:
                continue
            g0 = G.element(int(np.flatnonzero(coset)[0]))
            entries.append(FamilyEntry(L, len(saturated) - L.order, FamilyTag.L, LWitness(G0, g0)))
            break
    return sorted(entries, key=lambda e: e.sort_key)


def lstar_check(G: GroupSpec, S: GSubset, L: GSubset) -> Optional[LWitness]:
    """
    Ищет (G0, g0), при которых L попадает в ℒ*. G0 перебираются по возрастанию,
    g0 — по индексу; все условия зависят только от класса g0 + L, поэтому
    первым подходит наименьший элемент этого класса.
    """
    L = require_subgroup(G, L)
    saturated = saturate(G, S, L)
    orders = coset_orders(G, L)
    exp_total = None

    for G0 in _candidate_tops(G, L, saturated):
        index = G0.order // L.order
        if index < 4:
            continue
        coset = _single_coset_inside(G, saturated, L, G0)
        if coset is None:
            continue
        g0 = int(np.flatnonzero(coset)[0])

        # G0/L циклическая 2-группа и <g0> + L = G0
        predicates = _quotient_predicates(G, L, G0, orders)
        if not predicates.cyclic_2group or orders[g0] != index:
            continue
        # G/G0 элементарная абелева 2-группа
        if not predicates.elementary_2group_above:
            continue
        # exp(G/L) = exp(G0/L)
        if exp_total is None:
            exp_total = exponent_of_quotient(G, L)
        if exp_total != exponent_of_quotient(G, L, over=G0):
            continue
        # S ∩ (g0 + L) − s0 порождает L
        hits = np.flatnonzero(S.mask & coset)
        s0 = int(hits[0])
        shifts = G.add_table[hits, G.neg_table[s0]]
        if subgroup_generated(G, [int(x) for x in shifts]) != L:
            continue
        return LWitness(G0, G.element(g0))
    return None


def lstar_family(G: GroupSpec, S: GSubset) -> List[FamilyEntry]:
    entries = []
    for L in all_subgroups(G):
        witness = lstar_check(G, S, L)
        if witness is not None:
            entries.append(FamilyEntry(L, score(G, S, L), FamilyTag.LSTAR, witness))
    return sorted(entries, key=lambda e: e.sort_key)


def lstar_qualifying(G: GroupSpec, S: GSubset, entries: Optional[List[FamilyEntry]] = None) -> List[FamilyEntry]:
    """Подгруппы из ℒ* со счетом <= |S| − 1 (по теореме их не больше одной)."""
    if entries is None:
        entries = lstar_family(G, S)
    return [e for e in entries if e.score <= len(S) - 1]


def lambda_(G: GroupSpec, S: GSubset) -> Optional[int]:
    return opt_min(*(e.score for e in l_family(G, S)))


def lambda_star(G: GroupSpec, S: GSubset) -> Optional[int]:
    return opt_min(*(e.score for e in lstar_family(G, S)))


def kappa_simple(G: GroupSpec, S: GSubset) -> Optional[int]:
    """min{|S+H| − |H| : H ≤ G, S + H ≠ G}; верно для κ только при κ < |S|."""
    scores = []
    for H in all_subgroups(G):
        saturated = saturate(G, S, H)
        if len(saturated) != G.order:
            scores.append(len(saturated) - H.order)
    return opt_min(*scores)


# === ФРАГМЕНТЫ-СВИДЕТЕЛИ ===

def coset_fragment(G: GroupSpec, S: GSubset, H: GSubset) -> Fragment:
    """Фрагмент g + H с границей ровно |S+H| − |H| для H ∈ ℋ_G(S)."""
    H = require_subgroup(G, H)
    saturated = saturate(G, S, H)
    if len(saturated) == G.order:
        raise PreconditionError("S + H = G, подгруппа не лежит в ℋ_G(S)")
    candidates = np.flatnonzero(saturated.mask[G.double_table])
    if not candidates.size:
        raise PreconditionError("Нет g с 2g ∈ S + H, подгруппа не лежит в ℋ_G(S)")
    g = int(candidates[0])
    A = GSubset.from_indices(G, G.add_table[g, H.indices])
    return make_fragment(G, S, A)


def two_coset_fragment(G: GroupSpec, S: GSubset, L: GSubset, G0: GSubset, g0: ElementLike) -> Fragment:
    """Фрагмент (g + L) ∪ (g + g0 + L) для тройки (L, G0, g0), из определения ℒ."""
    L = require_subgroup(G, L)
    G0 = require_subgroup(G, G0)
    g0 = G.index_of(g0)
    if not L.issubset(G0):
        raise InvalidChainError("Требуется L ≤ G0")
    index = G0.order // L.order
    if index % 2 or index <= 2:
        raise PreconditionError(f"|G0/L| = {index} должен быть четным и больше 2")
    coset = _single_coset_inside(G, saturate(G, S, L), L, G0)
    if coset is None or not coset[g0]:
        raise PreconditionError("Не выполнено S + L = (G∖G0) ∪ (g0 + L)")

    candidates = [g for g in G0.indices if not L.mask[g] and L.mask[G.double_table[g]]]
    if not candidates:
        raise PreconditionError("Нет g ∈ G0∖L с 2g ∈ L")
    g = int(candidates[0])
    shifted = int(G.add_table[g, g0])
    A = GSubset.from_indices(G, np.concatenate([G.add_table[g, L.indices], G.add_table[shifted, L.indices]]))
    return make_fragment(G, S, A)


def _degree_fragment(G: GroupSpec, S: GSubset) -> Optional[Fragment]:
    """Одноэлементный фрагмент {g} без петли: его граница — все |S| соседей."""
    free = np.flatnonzero(~S.mask[G.double_table])
    if not free.size:
        return None
    try:
        return make_fragment(G, S, GSubset.from_indices(G, [int(free[0])]))
    except PreconditionError:
        return None


# === ФОРМУЛА ===

class Families(NamedTuple):
    h: List[FamilyEntry]
    l: List[FamilyEntry]
    lstar: List[FamilyEntry]


def families(G: GroupSpec, S: GSubset) -> Families:
    """ℋ, ℒ и ℒ* за один проход; отчет формулы хранит их для следствий."""
    return Families(h_family(G, S), l_family(G, S), lstar_family(G, S))


def kappa_formula(G: GroupSpec, S: GSubset) -> KappaReport:
    """
    Вычисляет κ(Γ⁺_G(S)) по замкнутой формуле и выбирает ветку.
    Всегда дополнительно сверяет результат с min{η, λ, |S|} по полным семействам.
    """
    n = len(S)

    if not n:
        # ℋ и ℒ* пусты: κ = min{∞, ∞, 0} = 0
        return KappaReport(G, S, 0, Branch.DEGREE, fragment=_degree_fragment(G, S))

    if is_complete(G, S):
        return KappaReport(G, S, G.order - 1, Branch.COMPLETE)

    fam = families(G, S)
    h_entries, l_entries, lstar_entries = fam
    eta_value = opt_min(*(e.score for e in h_entries))
    lambda_value = opt_min(*(e.score for e in l_entries))
    lambda_star_value = opt_min(*(e.score for e in lstar_entries))

    qualifying = [e for e in lstar_entries if e.score <= n - 1]
    if len(qualifying) > 1:
        raise TheoremViolationError(
            f"{G!r}, S={format_subset(S)}: {len(qualifying)} подгрупп из ℒ* со счетом <= |S|−1"
        )

    if qualifying:
        entry = qualifying[0]
        kappa = entry.score
        branch = Branch.LAMBDA_STAR
        fragment = two_coset_fragment(G, S, entry.subgroup, entry.witness.G0, entry.witness.g0)
    elif eta_value is not None and eta_value < n:
        entry = h_entries[0]
        kappa = eta_value
        branch = Branch.ETA
        fragment = coset_fragment(G, S, entry.subgroup)
    else:
        entry = None
        kappa = n
        branch = Branch.DEGREE
        fragment = _degree_fragment(G, S)

    theorem_value = opt_min(eta_value, lambda_value, n)
    if theorem_value != kappa:
        raise TheoremViolationError(
            f"{G!r}, S={format_subset(S)}: ветка {branch.value} дала κ={kappa}, а min{{η, λ, |S|}} = {theorem_value}"
        )

    logger.debug(f"🧩 {G!r}, S={format_subset(S)}: κ={kappa} ({branch.value})")
    return KappaReport(
        G, S, kappa, branch,
        eta=eta_value,
        lambda_=lambda_value,
        lambda_star=lambda_star_value,
        witness_entry=entry,
        fragment=fragment,
        families=fam,
    )


# === СЛЕДСТВИЯ ===

def corollary_predicates(G: GroupSpec, S: GSubset, report: KappaReport) -> CorollaryChecks:
    """Для каждого следствия: применимо ли оно и выполняется ли на данном отчете."""
    n = len(S)
    k = report.kappa
    proper = n < G.order
    connected = is_connected(G, S)
    meets_doubles = bool((S.mask & double_image(G).mask).any())
    simple = kappa_simple(G, S) if proper and (meets_doubles or k < n) else None

    p = smallest_nonzero_subgroup_order(G)
    small = []
    if proper:
        fam = report.families if report.families is not None else families(G, S)
        small = [e for e in fam.h + fam.lstar if e.score <= n - 1]
    small_s = n <= G.order / 2 or not has_z4_plus_z2_subgroup(G)

    return CorollaryChecks(
        sover2=Check(proper and connected, 2 * k >= n),
        charg=Check(proper and connected and p is not None, p is not None and k >= min(n - 1, p)),
        kappalarge=Check(proper, (k < n) == bool(small)),
        two_ast_s=Check(proper and meets_doubles, k == simple),
        theorem_simple=Check(proper and k < n, k == simple),
        connected_small_s=Check(proper and connected and small_s, k == opt_min(report.eta, n)),
    )


# === JSON ===

def report_to_dict(report: KappaReport) -> Dict[str, Any]:
    G = report.group
    witness = None
    if report.witness_entry is not None:
        entry = report.witness_entry
        witness = {
            "subgroup": format_subset(entry.subgroup),
            "G0": format_subset(entry.witness.G0) if entry.witness else None,
            "g0": format_element(G, entry.witness.g0.index) if entry.witness else None,
        }
    fragment = None
    if report.fragment is not None:
        fragment = {
            "vertices": format_subset(report.fragment.vertices),
            "boundary": format_subset(report.fragment.boundary),
        }
    return {
        "group": format_group_spec(G),
        "subset": format_subset(report.connection_set),
        "kappa": report.kappa,
        "branch": report.branch.value,
        "eta": report.eta,
        "lambda": report.lambda_,
        "lambda_star": report.lambda_star,
        "witness": witness,
        "fragment": fragment,
    }


def render_report_json(report: KappaReport) -> str:
    return json.dumps(report_to_dict(report), ensure_ascii=False, indent=2)


def report_from_dict(data: Dict[str, Any]) -> KappaReport:
    G = parse_group_spec(data["group"])
    S = parse_subset(G, data["subset"])
    branch = Branch(data["branch"])

    entry = None
    if data.get("witness"):
        w = data["witness"]
        H = subgroup_from_members(G, parse_subset(G, w["subgroup"]).members)
        witness = None
        if w.get("G0") is not None:
            G0 = subgroup_from_members(G, parse_subset(G, w["G0"]).members)
            witness = LWitness(G0, G.element(parse_element(G, w["g0"])))
        family = FamilyTag.LSTAR if branch is Branch.LAMBDA_STAR else FamilyTag.H
        entry = FamilyEntry(H, score(G, S, H), family, witness)

    fragment = None
    if data.get("fragment"):
        fragment = make_fragment(G, S, parse_subset(G, data["fragment"]["vertices"]))

    return KappaReport(
        G, S, data["kappa"], branch,
        eta=data.get("eta"),
        lambda_=data.get("lambda"),
        lambda_star=data.get("lambda_star"),
        witness_entry=entry,
        fragment=fragment,
    )


def parse_report_json(text: str) -> KappaReport:
    return report_from_dict(json.loads(text))
