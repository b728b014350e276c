"""Definitional classification into Tarski, Lindenbaum I-IV and TL-1..4 types"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from app.config import Budget, resolve_budget
from app.core import LogicalStructure, Verdict, subset_witness
from app.properties import (
    CUT,
    MIXED_CUT,
    MONOTONE,
    REFLEXIVE,
    TRANSITIVE,
    StructureProperty,
    check_structure,
    set_tables,
)
from app.utils.conversions import is_subset, supermasks

logger = logging.getLogger(__name__)

LIM_PAIR = "pair"
LIM_NONTRIVIAL = "nontrivial"

VERDICT_KEYS = (
    "reflexive",
    "monotone",
    "transitive",
    "cut",
    "mixed-cut",
    "tarski",
    "lindI",
    "lindII",
    "lindIII",
    "lindIV",
    "tl1",
    "tl2",
    "tl3",
    "tl4",
)

LIND_KEYS = ("lindI", "lindII", "lindIII", "lindIV")


@dataclass(frozen=True)
class LimSet:
    """Supersets of Γ that avoid α (pair kind) or stay nontrivial, with their maximal elements"""

    kind: str
    gamma: int
    alpha: Optional[int]
    members: Tuple[int, ...]
    maximal_elements: Tuple[int, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind,
            "gamma": subset_witness(self.gamma),
            "alpha": self.alpha,
            "members": [subset_witness(m) for m in self.members],
            "maximal": [subset_witness(m) for m in self.maximal_elements],
        }


def lim(structure: LogicalStructure, kind: str, gamma: int, alpha: Optional[int] = None) -> LimSet:
    """
    Enumerate Lim(Γ, α) or Lim(Γ) with its ⊆-maximal elements

    Args:
        structure: Logical structure
        kind: 'pair' for {Σ ⊇ Γ : Σ ⊬ α}, 'nontrivial' for {Σ ⊇ Γ : Σ nontrivial}
        gamma: Subset bit pattern
        alpha: Element, required for the pair kind

    Returns:
        LimSet with members and maximal elements in ascending order
    """
    structure.check_subset(gamma)
    if kind == LIM_PAIR:
        if alpha is None:
            raise ValueError("Lim of kind 'pair' requires an element α")
        structure.check_element(alpha)
        members = [s for s in supermasks(gamma, structure.n) if not structure.derives(s, alpha)]
    elif kind == LIM_NONTRIVIAL:
        members = [s for s in supermasks(gamma, structure.n) if structure.consequences(s) != structure.full]
    else:
        raise ValueError(f"Unknown Lim kind '{kind}'")

    maximal = [
        m for m in members if not any(other != m and is_subset(m, other) for other in members)
    ]
    return LimSet(kind, gamma, alpha, tuple(members), tuple(maximal))


@dataclass
class ClassificationReport:
    """Verdicts for every structure-level class, with witnesses for the false ones"""

    verdicts: Dict[str, bool] = field(default_factory=dict)
    witnesses: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    def __getitem__(self, key: str) -> bool:
        return self.verdicts[key]

    def record(self, key: str, verdict: Verdict) -> None:
        self.verdicts[key] = verdict.holds
        if not verdict.holds and verdict.witness is not None:
            self.witnesses[key] = verdict.witness

    def invariant_violations(self) -> List[str]:
        """Relationships every report must satisfy; a nonempty list means a bug"""
        v = self.verdicts
        problems = []
        for i, lind in enumerate(LIND_KEYS, start=1):
            if v[f"tl{i}"] != (v["tarski"] and v[lind]):
                problems.append(f"tl{i} != tarski and {lind}")
        if v["lindIV"] and not v["lindII"]:
            problems.append("lindIV without lindII")
        if v["lindII"] and not v["lindI"]:
            problems.append("lindII without lindI")
        if v["lindIII"] and not v["lindI"]:
            problems.append("lindIII without lindI")
        if v["tl2"] != v["tl4"]:
            problems.append("tl2 != tl4")
        return problems

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdicts": {key: self.verdicts[key] for key in VERDICT_KEYS if key in self.verdicts},
            "witnesses": {key: self.witnesses[key] for key in VERDICT_KEYS if key in self.witnesses},
        }


def lind_verdicts(structure: LogicalStructure) -> Dict[str, Verdict]:
    """
    Decide Lindenbaum I-IV by quantifying over every Γ and α

    Returns:
        Mapping lindI..lindIV -> Verdict
    """
    n = structure.n
    full = structure.full
    tables = set_tables(structure)
    closure = structure.table
    saturated = tables.saturated.tolist()
    alpha_saturated = tables.alpha_saturated.tolist()
    maximal_nontrivial = tables.maximal_nontrivial.tolist()
    relatively_maximal = tables.relatively_maximal.tolist()

    def nontrivial_extends(flags) -> Verdict:
        for gamma in range(1 << n):
            if closure[gamma] == full:
                continue
            if not any(flags[s] for s in supermasks(gamma, n)):
                return Verdict.no(gamma=subset_witness(gamma))
        return Verdict.yes()

    def underivable_extends(masks) -> Verdict:
        for gamma in range(1 << n):
            for alpha in range(n):
                if closure[gamma] >> alpha & 1:
                    continue
                if not any(masks[s] >> alpha & 1 for s in supermasks(gamma, n)):
                    return Verdict.no(gamma=subset_witness(gamma), alpha=alpha)
        return Verdict.yes()

    return {
        "lindI": nontrivial_extends(saturated),
        "lindII": underivable_extends(alpha_saturated),
        "lindIII": nontrivial_extends(maximal_nontrivial),
        "lindIV": underivable_extends(relatively_maximal),
    }


def classify(structure: LogicalStructure, budget: Optional[Budget] = None) -> ClassificationReport:
    """
    Classify a structure by the definitions of each type

    Args:
        structure: Logical structure
        budget: Evaluation budget (defaults to configured caps)

    Returns:
        ClassificationReport with all fourteen verdicts

    Raises:
        BudgetExceededError: If a check exceeds its soft cap
    """
    budget = resolve_budget(budget)
    report = ClassificationReport()
    for key, tag in (
        ("reflexive", REFLEXIVE),
        ("monotone", MONOTONE),
        ("transitive", TRANSITIVE),
        ("cut", CUT),
        ("mixed-cut", MIXED_CUT),
    ):
        report.record(key, check_structure(structure, StructureProperty(tag), budget))

    tarski_axioms = ("reflexive", "monotone", "transitive")
    failed = [key for key in tarski_axioms if not report.verdicts[key]]
    if failed:
        report.record("tarski", Verdict.no(axiom=failed[0], **report.witnesses[failed[0]]))
    else:
        report.record("tarski", Verdict.yes())

    lind = lind_verdicts(structure)
    for key in LIND_KEYS:
        report.record(key, lind[key])

    for i, key in enumerate(LIND_KEYS, start=1):
        if not report.verdicts["tarski"]:
            report.record(f"tl{i}", Verdict.no(failed="tarski"))
        elif not report.verdicts[key]:
            report.record(f"tl{i}", Verdict.no(failed=key, **report.witnesses.get(key, {})))
        else:
            report.record(f"tl{i}", Verdict.yes())

    logger.debug(
        f"Classified n={structure.n}: "
        + ", ".join(f"{k}={'T' if report.verdicts[k] else 'F'}" for k in VERDICT_KEYS)
    )
    return report
