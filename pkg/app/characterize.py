"""Characterization statements evaluated literally, for cross-checking the classifier

Nothing here reuses the predicate tables of app.properties: every notion is
re-derived from the consequence table so that agreement with app.classify is
a meaningful test.
"""

import logging
from typing import Callable, Dict, List, Optional, Tuple

from app.bival import suszko_adequate
from app.config import Budget, resolve_budget
from app.core import LogicalStructure, Verdict, subset_witness
from app.utils.conversions import proper_supermasks, submasks, supermasks

logger = logging.getLogger(__name__)

TARSKI = "tarski"
LINDENBAUM_IV = "lindenbaum-iv"
LINDENBAUM_III = "lindenbaum-iii"
TL4 = "tl4"

STATEMENTS: Dict[str, Tuple[int, ...]] = {
    TARSKI: (1, 2, 3, 4),
    LINDENBAUM_IV: (1, 2, 3),
    LINDENBAUM_III: (1, 2, 3),
    TL4: (1, 2, 3, 4, 5),
}


class LiteralEvaluator:
    """Reads every definition straight off the consequence table, memoizing per subset"""

    def __init__(self, structure: LogicalStructure):
        self.structure = structure
        self.n = structure.n
        self.full = structure.full
        self.table = structure.table
        self._strongly_closed: Dict[int, bool] = {}
        self._alpha_saturated: Dict[Tuple[int, int], bool] = {}
        self._relmax: Dict[Tuple[int, int], bool] = {}

    def derives(self, gamma: int, alpha: int) -> bool:
        return bool(self.table[gamma] >> alpha & 1)

    def subsets(self) -> range:
        return range(1 << self.n)

    def underivable(self, gamma: int) -> List[int]:
        return [a for a in range(self.n) if not self.derives(gamma, a)]

    def nontrivial(self, gamma: int) -> bool:
        return self.table[gamma] != self.full

    def strongly_closed(self, gamma: int) -> bool:
        if gamma not in self._strongly_closed:
            result = gamma & ~self.table[gamma] == 0 and all(
                self.table[sub] & ~gamma == 0 for sub in submasks(gamma)
            )
            self._strongly_closed[gamma] = result
        return self._strongly_closed[gamma]

    def alpha_saturated(self, gamma: int, alpha: int) -> bool:
        key = (gamma, alpha)
        if key not in self._alpha_saturated:
            self._alpha_saturated[key] = not self.derives(gamma, alpha) and all(
                self.derives(gamma | 1 << beta, alpha)
                for beta in range(self.n)
                if not gamma >> beta & 1
            )
        return self._alpha_saturated[key]

    def saturated(self, gamma: int) -> bool:
        return any(self.alpha_saturated(gamma, a) for a in range(self.n))

    def relatively_maximal(self, gamma: int, alpha: int) -> bool:
        key = (gamma, alpha)
        if key not in self._relmax:
            self._relmax[key] = not self.derives(gamma, alpha) and all(
                self.derives(sigma, alpha) for sigma in proper_supermasks(gamma, self.n)
            )
        return self._relmax[key]

    def maximal_within(self, gamma: int, member: Callable[[int], bool]) -> bool:
        return member(gamma) and not any(member(s) for s in proper_supermasks(gamma, self.n))

    def has_maximal_member(self, members: List[int]) -> bool:
        return any(not any(o != m and m & ~o == 0 for o in members) for m in members)

    # Tarski axioms phrased on C directly

    def tarski_axioms(self) -> Verdict:
        table = self.table
        for gamma in self.subsets():
            if gamma & ~table[gamma]:
                return Verdict.no(axiom="reflexive", gamma=subset_witness(gamma))
        for gamma in self.subsets():
            for sigma in supermasks(gamma, self.n):
                if table[gamma] & ~table[sigma]:
                    return Verdict.no(axiom="monotone", gamma=subset_witness(gamma), sigma=subset_witness(sigma))
        for gamma in self.subsets():
            closure = table[gamma]
            for sigma in submasks(closure):
                if table[sigma] & ~closure:
                    return Verdict.no(axiom="transitive", gamma=subset_witness(gamma), sigma=subset_witness(sigma))
        return Verdict.yes()

    def for_each_underivable(self, predicate: Callable[[int, int], bool]) -> Verdict:
        for gamma in self.subsets():
            for alpha in self.underivable(gamma):
                if not predicate(gamma, alpha):
                    return Verdict.no(gamma=subset_witness(gamma), alpha=alpha)
        return Verdict.yes()

    def for_each_nontrivial(self, predicate: Callable[[int], bool]) -> Verdict:
        for gamma in self.subsets():
            if self.nontrivial(gamma) and not predicate(gamma):
                return Verdict.no(gamma=subset_witness(gamma))
        return Verdict.yes()

    def extends_to(self, gamma: int, predicate: Callable[[int], bool]) -> bool:
        return any(predicate(sigma) for sigma in supermasks(gamma, self.n))

    def lindenbaum_iv(self) -> Verdict:
        return self.for_each_underivable(
            lambda g, a: self.extends_to(g, lambda s: self.relatively_maximal(s, a))
        )

    def lindenbaum_iii(self) -> Verdict:
        return self.for_each_nontrivial(
            lambda g: self.extends_to(g, lambda s: self.maximal_within(s, self.nontrivial))
        )

    def minimum_strongly_closed_extensions(self) -> Verdict:
        """For every Γ ⊬ α, the strongly closed Δ ⊇ Γ with Δ ⊬ α have a ⊆-least member"""

        def has_minimum(gamma: int, alpha: int) -> bool:
            family = [
                s
                for s in supermasks(gamma, self.n)
                if self.strongly_closed(s) and not self.derives(s, alpha)
            ]
            return any(all(m & ~o == 0 for o in family) for m in family)

        return self.for_each_underivable(has_minimum)


def _tarski(ev: LiteralEvaluator, statement: int, budget: Budget) -> Verdict:
    if statement == 1:
        return ev.tarski_axioms()
    if statement == 2:
        return suszko_adequate(ev.structure, budget)
    if statement == 3:
        return ev.for_each_underivable(
            lambda g, a: ev.extends_to(g, lambda s: ev.strongly_closed(s) and not ev.derives(s, a))
        )
    table = ev.table
    for gamma in ev.subsets():
        closure = table[gamma]
        for sigma in ev.subsets():
            if (sigma & ~closure == 0) != (table[sigma] & ~closure == 0):
                return Verdict.no(gamma=subset_witness(gamma), sigma=subset_witness(sigma))
    return Verdict.yes()


def _lindenbaum_iv(ev: LiteralEvaluator, statement: int) -> Verdict:
    if statement == 1:
        return ev.lindenbaum_iv()
    if statement == 2:
        return ev.for_each_underivable(
            lambda g, a: ev.extends_to(g, lambda s: ev.maximal_within(s, lambda x: ev.alpha_saturated(x, a)))
        )

    def lim_has_maximal(gamma: int, alpha: int) -> bool:
        members = [s for s in supermasks(gamma, ev.n) if not ev.derives(s, alpha)]
        return not members or ev.has_maximal_member(members)

    return _every_pair(ev, lim_has_maximal)


def _every_pair(ev: LiteralEvaluator, predicate: Callable[[int, int], bool]) -> Verdict:
    for gamma in ev.subsets():
        for alpha in range(ev.n):
            if not predicate(gamma, alpha):
                return Verdict.no(gamma=subset_witness(gamma), alpha=alpha)
    return Verdict.yes()


def _lindenbaum_iii(ev: LiteralEvaluator, statement: int) -> Verdict:
    if statement == 1:
        return ev.lindenbaum_iii()
    if statement == 2:
        return ev.for_each_nontrivial(
            lambda g: ev.extends_to(g, lambda s: ev.maximal_within(s, ev.saturated))
        )
    for gamma in ev.subsets():
        members = [s for s in supermasks(gamma, ev.n) if ev.nontrivial(s)]
        if members and not ev.has_maximal_member(members):
            return Verdict.no(gamma=subset_witness(gamma))
    return Verdict.yes()


def _tl4(ev: LiteralEvaluator, statement: int) -> Verdict:
    if statement == 1:
        tarski = ev.tarski_axioms()
        return tarski if not tarski else ev.lindenbaum_iv()
    if statement == 2:
        return ev.for_each_underivable(
            lambda g, a: ev.extends_to(g, lambda s: ev.strongly_closed(s) and ev.relatively_maximal(s, a))
        )
    if statement == 3:
        return ev.for_each_underivable(
            lambda g, a: ev.extends_to(g, lambda s: ev.strongly_closed(s) and ev.alpha_saturated(s, a))
        )
    if statement == 4:

        def bucketed(gamma: int, alpha: int) -> bool:
            return any(
                ev.derives(1 << beta, alpha)
                and ev.extends_to(
                    gamma,
                    lambda s: ev.strongly_closed(s) and ev.alpha_saturated(s, beta) and not ev.derives(s, alpha),
                )
                for beta in range(ev.n)
            )

        return ev.for_each_underivable(bucketed)

    # one β per α serves every Γ ⊬ α
    for alpha in range(ev.n):
        def serves(beta: int) -> bool:
            return all(
                ev.extends_to(
                    gamma,
                    lambda s: ev.strongly_closed(s) and ev.alpha_saturated(s, beta) and not ev.derives(s, alpha),
                )
                for gamma in ev.subsets()
                if not ev.derives(gamma, alpha)
            )

        if not any(serves(beta) for beta in range(ev.n)):
            return Verdict.no(alpha=alpha)
    return Verdict.yes()


def check_characterization(
    structure: LogicalStructure,
    theorem: str,
    statement: int,
    budget: Optional[Budget] = None,
    evaluator: Optional[LiteralEvaluator] = None,
) -> Verdict:
    """
    Evaluate one statement of a characterization theorem literally

    Args:
        structure: Logical structure
        theorem: 'tarski', 'lindenbaum-iv', 'lindenbaum-iii' or 'tl4'
        statement: 1-based statement index
        budget: Evaluation budget (defaults to configured caps)
        evaluator: Reuse an evaluator's memo tables across statements

    Returns:
        Verdict of the statement

    Raises:
        ValueError: If the theorem or statement index is unknown
        BudgetExceededError: If the carrier is above the characterization cap
    """
    if theorem not in STATEMENTS:
        raise ValueError(f"Unknown characterization '{theorem}' (expected one of {', '.join(STATEMENTS)})")
    if statement not in STATEMENTS[theorem]:
        raise ValueError(f"Characterization '{theorem}' has no statement {statement}")
    budget = resolve_budget(budget)
    budget.require("characterization", structure.n)
    ev = evaluator or LiteralEvaluator(structure)

    if theorem == TARSKI:
        return _tarski(ev, statement, budget)
    if theorem == LINDENBAUM_IV:
        return _lindenbaum_iv(ev, statement)
    if theorem == LINDENBAUM_III:
        return _lindenbaum_iii(ev, statement)
    return _tl4(ev, statement)


def all_statements(structure: LogicalStructure, theorem: str, budget: Optional[Budget] = None) -> Dict[int, bool]:
    """Evaluate every statement of one characterization with a shared evaluator"""
    ev = LiteralEvaluator(structure)
    return {
        i: check_characterization(structure, theorem, i, budget, ev).holds for i in STATEMENTS[theorem]
    }


def minimum_strongly_closed_extensions(structure: LogicalStructure, budget: Optional[Budget] = None) -> Verdict:
    """Every Γ ⊬ α has a ⊆-least strongly closed extension that still does not derive α"""
    resolve_budget(budget).require("characterization", structure.n)
    return LiteralEvaluator(structure).minimum_strongly_closed_extensions()
