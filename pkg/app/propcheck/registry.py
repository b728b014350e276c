"""Theorem registry: hypothesis and conclusion predicates checked against finite structures"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence

import numpy as np

from app.bival import SCS, SCS_STAR, extract, minimality_probe, relmax_equals_scs
from app.characterize import (
    LINDENBAUM_III,
    LINDENBAUM_IV,
    TARSKI,
    TL4,
    all_statements,
    minimum_strongly_closed_extensions,
)
from app.classify import ClassificationReport, classify
from app.config import Budget, resolve_budget
from app.core import (
    ArrowTable,
    LogicalStructure,
    Verdict,
    induce,
    subrelation_witness,
    subset_witness,
)
from app.properties import (
    ARROW_SATURATED,
    SetProperty,
    SetTables,
    batens_condition,
    enumerate_sets,
    modus_ponens,
    set_tables,
)
from app.utils.conversions import from_bits, supermasks

logger = logging.getLogger(__name__)


class SampleFacts:
    """Lazily computed facts about one structure, shared by every theorem checked on it"""

    def __init__(self, structure: LogicalStructure, arrow: Optional[ArrowTable] = None, budget: Optional[Budget] = None):
        self.structure = structure
        self.arrow = arrow
        self.budget = resolve_budget(budget)
        self.n = structure.n
        self.full = structure.full

    @cached_property
    def tables(self) -> SetTables:
        return set_tables(self.structure)

    @cached_property
    def report(self) -> ClassificationReport:
        return classify(self.structure, self.budget)

    @property
    def verdicts(self) -> Dict[str, bool]:
        return self.report.verdicts

    def holds(self, *keys: str) -> bool:
        return all(self.verdicts[key] for key in keys)

    def where(self, mask: np.ndarray) -> List[int]:
        return [int(g) for g in np.flatnonzero(mask)]

    def closure(self, gamma: int) -> int:
        return self.structure.table[gamma]

    @cached_property
    def saturated(self) -> List[int]:
        return self.where(self.tables.saturated)

    @cached_property
    def saturated_self_deriving(self) -> bool:
        """
        Every saturated Σ satisfies Σ ⊆ C(Σ)

        Cut alone only gives C(Σ) ⊆ Σ for saturated Σ: on one element,
        C(∅) = {0} and C({0}) = ∅ satisfies mixed-cut while L is saturated
        and not closed. Entries built on "saturated implies closed" carry
        this condition in their hypothesis.
        """
        return all(g & ~self.closure(g) == 0 for g in self.saturated)

    @cached_property
    def maximal_nontrivial(self) -> List[int]:
        return self.where(self.tables.maximal_nontrivial)

    @cached_property
    def proper_closed(self) -> List[int]:
        return [g for g in self.where(self.tables.closed) if g != self.full]

    @cached_property
    def scs(self):
        return extract(self.structure, SCS, self.budget).base

    @cached_property
    def modus_ponens(self) -> bool:
        return self.arrow is not None and modus_ponens(self.structure, self.arrow).holds

    @cached_property
    def batens(self) -> bool:
        return self.arrow is not None and batens_condition(self.structure, self.arrow).holds

    @cached_property
    def arrow_saturated_nontrivial(self) -> List[int]:
        if self.arrow is None:
            return []
        members = enumerate_sets(self.structure, SetProperty(ARROW_SATURATED, arrow=self.arrow), self.budget)
        return [g for g in members if self.closure(g) != self.full]

    @cached_property
    def relmax_in_every_underivable(self) -> List[int]:
        """Nontrivial Γ that are relatively maximal in every α ∉ C(Γ)"""
        rm = self.tables.relatively_maximal
        return [
            g
            for g in range(self.structure.size)
            if self.closure(g) != self.full and int(rm[g]) & ~self.closure(g) & self.full == ~self.closure(g) & self.full
        ]

    @cached_property
    def closure_condition(self) -> bool:
        """Every Γ with C(Γ ∪ {α}) ⊆ C(Γ) for some α ∉ Γ is closed"""
        table = self.structure.table
        for gamma in range(self.structure.size):
            if table[gamma] == gamma:
                continue
            for alpha in range(self.n):
                if not gamma >> alpha & 1 and table[gamma | 1 << alpha] & ~table[gamma] == 0:
                    return False
        return True


def _every(members: Iterable[int], predicate: Callable[[int], bool]) -> Verdict:
    for gamma in members:
        if not predicate(gamma):
            return Verdict.no(gamma=subset_witness(gamma))
    return Verdict.yes()


def _agrees(statements: Dict[int, bool], expected: bool) -> Verdict:
    disagreeing = [i for i, value in statements.items() if value != expected]
    if not disagreeing:
        return Verdict.yes()
    return Verdict.no(definition=expected, statements={str(i): v for i, v in statements.items()})


def _same(f: SampleFacts, left: str, right: str) -> Verdict:
    v = f.verdicts
    if v[left] == v[right]:
        return Verdict.yes()
    return Verdict.no(**{left: v[left], right: v[right]})


@dataclass(frozen=True)
class Theorem:
    """
    One registry entry

    The conclusion is asserted only on structures where the hypothesis holds.
    needs_arrow entries are skipped for samples without a connective.
    """

    theorem_id: str
    anchor: str
    hypothesis: Callable[[SampleFacts], bool] = field(compare=False, repr=False)
    conclusion: Callable[[SampleFacts], Verdict] = field(compare=False, repr=False)
    needs_arrow: bool = False

    def applies(self, facts: SampleFacts) -> bool:
        if self.needs_arrow and facts.arrow is None:
            return False
        return bool(self.hypothesis(facts))


def _always(facts: SampleFacts) -> bool:
    return True


# set-level theorems


def _t01(f: SampleFacts) -> Verdict:
    return _every(f.saturated, lambda g: bool(f.tables.closed[g]))


def _t02(f: SampleFacts) -> Verdict:
    full = f.full
    return Verdict.yes() if f.closure(full) == full else Verdict.no(closure=from_bits(f.closure(full)))


def _t03(f: SampleFacts) -> Verdict:
    return _every(f.saturated, lambda g: bool(f.tables.strongly_closed[g]))


def _underivable(f: SampleFacts, gamma: int) -> int:
    return ~f.closure(gamma) & f.full


def _t04(f: SampleFacts) -> Verdict:
    rm = f.tables.relatively_maximal
    return _every(f.maximal_nontrivial, lambda g: _underivable(f, g) & ~int(rm[g]) == 0)


def _t05(f: SampleFacts) -> Verdict:
    sat = f.tables.alpha_saturated
    return _every(f.maximal_nontrivial, lambda g: _underivable(f, g) & ~int(sat[g]) == 0 and int(sat[g]) != 0)


def _t06(f: SampleFacts) -> Verdict:
    return _every(f.saturated, lambda g: f.closure(g) != f.full)


def _t07(f: SampleFacts) -> Verdict:
    return _every(f.relmax_in_every_underivable, lambda g: bool(f.tables.maximal_nontrivial[g]))


def _t08(f: SampleFacts) -> Verdict:
    t = f.tables
    return _every(f.arrow_saturated_nontrivial, lambda g: bool(t.maximal_nontrivial[g] and t.closed[g]))


def _t09(f: SampleFacts) -> Verdict:
    members = set(enumerate_sets(f.structure, SetProperty(ARROW_SATURATED, arrow=f.arrow), f.budget))
    return _every(f.where(f.tables.closed), lambda g: g in members)


def _t10(f: SampleFacts) -> Verdict:
    t = f.tables
    for gamma in f.where(t.maximal_alpha_saturated != 0):
        loose = int(t.maximal_alpha_saturated[gamma]) & ~int(t.relatively_maximal[gamma])
        if loose:
            return Verdict.no(gamma=subset_witness(gamma), alpha=from_bits(loose)[0])
    return Verdict.yes()


def _intersection(members: Iterable[int], full: int) -> int:
    result = full
    for m in members:
        result &= m
    return result


def _t11(f: SampleFacts) -> Verdict:
    sat = set(f.saturated)
    return _every(
        f.proper_closed,
        lambda g: _intersection((s for s in supermasks(g, f.n) if s in sat), f.full) == g,
    )


def _t12(f: SampleFacts) -> Verdict:
    sat = set(f.saturated)
    return _every(
        f.proper_closed,
        lambda g: _intersection((f.closure(s) for s in supermasks(g, f.n) if s in sat), f.full) == g,
    )


def _t18(f: SampleFacts) -> Verdict:
    return _every(f.where(f.tables.maximal_saturated), lambda g: bool(f.tables.maximal_nontrivial[g]))


def _t20(f: SampleFacts) -> Verdict:
    trivial = f.tables.trivial
    for gamma in f.where(trivial):
        for beta in range(f.n):
            if not trivial[gamma | 1 << beta]:
                return Verdict.no(gamma=subset_witness(gamma), sigma=subset_witness(gamma | 1 << beta))
    return Verdict.yes()


# structure-level theorems


def _t21(f: SampleFacts) -> Verdict:
    v = f.verdicts
    for stronger, weaker in (("lindII", "lindI"), ("lindIV", "lindII"), ("lindIII", "lindI")):
        if v[stronger] and not v[weaker]:
            return Verdict.no(holds=stronger, fails=weaker)
    return Verdict.yes()


def _t23(f: SampleFacts) -> Verdict:
    v = f.verdicts
    for key in ("tl2", "tl3", "tl4"):
        if v[key] and not v["tl1"]:
            return Verdict.no(holds=key, fails="tl1")
    return _same(f, "tl2", "tl4")


def _adequate(f: SampleFacts, kind: str) -> bool:
    valuations = f.scs if kind == SCS else extract(f.structure, kind, f.budget).base
    semantic = induce(valuations, allow_empty=True)
    return semantic.table == f.structure.table


def _t26(f: SampleFacts) -> Verdict:
    witness = subrelation_witness(f.structure, induce(f.scs, allow_empty=True))
    if witness is None:
        return Verdict.yes()
    gamma, alpha = witness
    return Verdict.no(gamma=subset_witness(gamma), alpha=alpha)


def _t27(f: SampleFacts) -> Verdict:
    return Verdict.yes() if _adequate(f, SCS) else Verdict.no(scs=[from_bits(v) for v in f.scs])


def _t28(f: SampleFacts) -> Verdict:
    report = minimality_probe(f.structure, budget=f.budget)
    if report.holds:
        return Verdict.yes()
    return Verdict(False, report.to_dict())


def _t29(f: SampleFacts) -> Verdict:
    adequate = _adequate(f, SCS_STAR)
    if adequate == f.verdicts["tl4"]:
        return Verdict.yes()
    return Verdict.no(scs_star_adequate=adequate, tl4=f.verdicts["tl4"])


def _t31(f: SampleFacts) -> Verdict:
    t = f.tables
    verdict = _every(f.where(t.relatively_maximal != 0), lambda g: bool(t.strongly_closed[g]))
    if not verdict:
        return verdict
    return Verdict.yes() if relmax_equals_scs(f.structure, f.budget) else Verdict.no(reason="RELMAX differs from SCS")


def _t33(f: SampleFacts) -> Verdict:
    minimum = minimum_strongly_closed_extensions(f.structure, f.budget).holds
    if minimum == f.verdicts["tarski"]:
        return Verdict.yes()
    return Verdict.no(minimum_extensions=minimum, tarski=f.verdicts["tarski"])


def _characterization(theorem: str, key: str) -> Callable[[SampleFacts], Verdict]:
    return lambda f: _agrees(all_statements(f.structure, theorem, f.budget), f.verdicts[key])


def _verdict_of(key: str) -> Callable[[SampleFacts], Verdict]:
    def check(f: SampleFacts) -> Verdict:
        if f.verdicts[key]:
            return Verdict.yes()
        return Verdict(False, f.report.witnesses.get(key, {}))

    return check


def default_theorems() -> List[Theorem]:
    return [
        Theorem(
            "T01",
            "cut, saturated sets self-deriving: every saturated set is closed",
            lambda f: f.holds("cut") and f.saturated_self_deriving,
            _t01,
        ),
        Theorem(
            "T02",
            "cut, saturated sets self-deriving: C(L) = L",
            lambda f: f.holds("cut") and f.saturated_self_deriving,
            _t02,
        ),
        Theorem(
            "T03",
            "mixed-cut, saturated sets self-deriving: every saturated set is strongly closed",
            lambda f: f.holds("mixed-cut") and f.saturated_self_deriving,
            _t03,
        ),
        Theorem(
            "T04",
            "a maximal nontrivial Γ is relatively maximal in every α ∉ C(Γ)",
            lambda f: bool(f.maximal_nontrivial),
            _t04,
        ),
        Theorem(
            "T05",
            "a maximal nontrivial Γ is α-saturated for every α ∉ C(Γ), hence saturated",
            lambda f: bool(f.maximal_nontrivial),
            _t05,
        ),
        Theorem("T06", "every saturated set is nontrivial", lambda f: bool(f.saturated), _t06),
        Theorem(
            "T07",
            "monotone: a nontrivial Γ relatively maximal in every α ∉ C(Γ) is maximal nontrivial",
            lambda f: f.holds("monotone") and bool(f.relmax_in_every_underivable),
            _t07,
        ),
        Theorem(
            "T08",
            "reflexive with modus ponens: a nontrivial →-saturated set is maximal nontrivial and closed",
            lambda f: f.holds("reflexive") and f.modus_ponens and bool(f.arrow_saturated_nontrivial),
            _t08,
            needs_arrow=True,
        ),
        Theorem(
            "T09",
            "reflexive with C(Σ ∪ ξ_β) ⊆ C(Σ) for β ∉ Σ: every closed set is →-saturated",
            lambda f: f.holds("reflexive") and f.batens,
            _t09,
            needs_arrow=True,
        ),
        Theorem(
            "T10",
            "Lindenbaum-II: every maximal α-saturated set is relatively maximal in α",
            lambda f: f.holds("lindII") and bool(np.any(f.tables.maximal_alpha_saturated)),
            _t10,
        ),
        Theorem(
            "T11",
            "Lindenbaum-II with cut, saturated sets self-deriving: a closed Γ ⊊ L is the intersection of its saturated extensions",
            lambda f: f.holds("lindII", "cut") and f.saturated_self_deriving and bool(f.proper_closed),
            _t11,
        ),
        Theorem(
            "T12",
            "reflexive Lindenbaum-II: a closed Γ ⊊ L is ⋂ C(Σ) over saturated Σ ⊇ Γ",
            lambda f: f.holds("reflexive", "lindII") and bool(f.proper_closed),
            _t12,
        ),
        Theorem(
            "T13",
            "Lindenbaum-II with cut, saturated sets self-deriving: reflexive",
            lambda f: f.holds("lindII", "cut") and f.saturated_self_deriving,
            _verdict_of("reflexive"),
        ),
        Theorem(
            "T14",
            "Lindenbaum-II with mixed-cut, saturated sets self-deriving: Tarski type",
            lambda f: f.holds("lindII", "mixed-cut") and f.saturated_self_deriving,
            _verdict_of("tarski"),
        ),
        Theorem("T15", "Lindenbaum-IV characterization", _always, _characterization(LINDENBAUM_IV, "lindIV")),
        Theorem(
            "T16",
            "reflexive with cut, where C(Γ ∪ {α}) ⊆ C(Γ) for α ∉ Γ forces Γ closed: Lindenbaum-IV",
            lambda f: f.holds("reflexive", "cut") and f.closure_condition,
            _verdict_of("lindIV"),
        ),
        Theorem(
            "T17",
            "monotone: Lindenbaum-IV iff Lindenbaum-II",
            lambda f: f.holds("monotone"),
            lambda f: _same(f, "lindIV", "lindII"),
        ),
        Theorem(
            "T18",
            "Lindenbaum-I: every maximal saturated set is maximal nontrivial",
            lambda f: f.holds("lindI") and bool(np.any(f.tables.maximal_saturated)),
            _t18,
        ),
        Theorem("T19", "Lindenbaum-III characterization", _always, _characterization(LINDENBAUM_III, "lindIII")),
        Theorem(
            "T20",
            "Lindenbaum-I with mixed-cut, saturated sets self-deriving: trivial sets are upward closed",
            lambda f: f.holds("lindI", "mixed-cut") and f.saturated_self_deriving,
            _t20,
        ),
        Theorem("T21", "Lindenbaum II ⟹ I, IV ⟹ II, III ⟹ I", _always, _t21),
        Theorem("T22", "finitary monotone structures are Lindenbaum-IV", lambda f: f.holds("monotone"), _verdict_of("lindIV")),
        Theorem("T23", "TL-2, TL-3, TL-4 each imply TL-1, and TL-2 iff TL-4", _always, _t23),
        Theorem("T24", "Tarski type satisfies mixed-cut", lambda f: f.holds("tarski"), _verdict_of("mixed-cut")),
        Theorem("T25", "TL-4 characterization", _always, _characterization(TL4, "tl4")),
        Theorem("T26", "⊢ ⊆ ⊢_SCS for every structure", _always, _t26),
        Theorem("T27", "TL-4: ⊢ = ⊢_SCS", lambda f: f.holds("tl4"), _t27),
        Theorem(
            "T28",
            "TL-4: every B ⊊ SCS gives ⊢ ⊊ ⊢_B",
            lambda f: f.holds("tl4") and len(f.scs) > 0,
            _t28,
        ),
        Theorem("T29", "TL-4 iff ⊢ = ⊢_SCS*", _always, _t29),
        Theorem("T30", "Tarski characterization", _always, _characterization(TARSKI, "tarski")),
        Theorem(
            "T31",
            "Tarski: relatively maximal sets are strongly closed, and RELMAX = SCS",
            lambda f: f.holds("tarski"),
            _t31,
        ),
        Theorem("T32", "mixed-cut implies cut", lambda f: f.holds("mixed-cut"), _verdict_of("cut")),
        Theorem(
            "T33",
            "Tarski iff every Γ ⊬ α has a ⊆-minimum strongly closed extension not deriving α",
            _always,
            _t33,
        ),
    ]


class TheoremRegistry:
    """Ordered collection of theorems keyed by id"""

    def __init__(self, theorems: Optional[Iterable[Theorem]] = None):
        self._entries: Dict[str, Theorem] = {}
        for theorem in theorems or ():
            self.register(theorem)

    @classmethod
    def default(cls) -> "TheoremRegistry":
        return cls(default_theorems())

    def register(self, theorem: Theorem) -> None:
        """
        Add a theorem

        Raises:
            ValueError: If the id is already registered
        """
        if theorem.theorem_id in self._entries:
            raise ValueError(f"Theorem {theorem.theorem_id} is already registered")
        self._entries[theorem.theorem_id] = theorem
        logger.debug(f"Registered theorem {theorem.theorem_id}: {theorem.anchor}")

    @property
    def ids(self) -> List[str]:
        return list(self._entries)

    def __contains__(self, theorem_id: str) -> bool:
        return theorem_id in self._entries

    def __getitem__(self, theorem_id: str) -> Theorem:
        return self._entries[theorem_id]

    def __iter__(self) -> Iterator[Theorem]:
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def select(self, ids: Optional[Sequence[str]] = None) -> List[Theorem]:
        """
        Theorems for a list of ids, in registry order

        Raises:
            ValueError: If an id is not registered
        """
        if ids is None:
            return list(self)
        unknown = [i for i in ids if i not in self._entries]
        if unknown:
            raise ValueError(f"Unknown theorem id(s): {', '.join(unknown)}")
        wanted = set(ids)
        return [t for t in self if t.theorem_id in wanted]


def parse_theorem_ids(text: str) -> Optional[List[str]]:
    """
    Parse the --theorems argument

    Args:
        text: "all" or comma-separated ids; "22" is read as "T22"

    Returns:
        None for all theorems, otherwise the ids in the given order
    """
    text = text.strip()
    if text.lower() == "all":
        return None
    ids = []
    for token in text.split(","):
        token = token.strip().upper()
        if not token:
            continue
        if token.isdigit():
            token = f"T{int(token):02d}"
        ids.append(token)
    if not ids:
        raise ValueError("No theorem ids given")
    return ids
