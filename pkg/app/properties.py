"""Set-level and structure-level predicates on finite logical structures"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional

import numpy as np

from app.config import Budget, resolve_budget
from app.core import ArrowTable, LogicalStructure, Verdict, subset_witness
from app.errors import WidthMismatchError
from app.utils.conversions import from_bits, proper_supermasks, submasks
from app.utils.lattice import (
    strict_superset_and,
    strict_superset_or,
    subset_indices,
    subset_or,
    superset_and,
    superset_or,
)

logger = logging.getLogger(__name__)

CLOSED = "closed"
STRONGLY_CLOSED = "strongly-closed"
TRIVIAL = "trivial"
NONTRIVIAL = "nontrivial"
ALPHA_SATURATED = "alpha-saturated"
SATURATED = "saturated"
RELATIVELY_MAXIMAL = "relatively-maximal"
MAXIMAL_NONTRIVIAL = "maximal-nontrivial"
MAXIMAL_SATURATED = "maximal-saturated"
MAXIMAL_ALPHA_SATURATED = "maximal-alpha-saturated"
ARROW_SATURATED = "arrow-saturated"

SET_TAGS = (
    CLOSED,
    STRONGLY_CLOSED,
    TRIVIAL,
    NONTRIVIAL,
    ALPHA_SATURATED,
    SATURATED,
    RELATIVELY_MAXIMAL,
    MAXIMAL_NONTRIVIAL,
    MAXIMAL_SATURATED,
    MAXIMAL_ALPHA_SATURATED,
    ARROW_SATURATED,
)
ALPHA_TAGS = (ALPHA_SATURATED, RELATIVELY_MAXIMAL, MAXIMAL_ALPHA_SATURATED)

REFLEXIVE = "reflexive"
MONOTONE = "monotone"
TRANSITIVE = "transitive"
TARSKI_BY_DEF = "tarski-by-def"
CUT = "cut"
MIXED_CUT = "mixed-cut"
FINITARY = "finitary"
MODUS_PONENS = "modus-ponens"

STRUCTURE_TAGS = (REFLEXIVE, MONOTONE, TRANSITIVE, TARSKI_BY_DEF, CUT, MIXED_CUT, FINITARY, MODUS_PONENS)


@dataclass(frozen=True)
class SetProperty:
    """A set-level predicate, parameterized by α or an arrow where the tag needs one"""

    tag: str
    alpha: Optional[int] = None
    arrow: Optional[ArrowTable] = None

    def __post_init__(self):
        if self.tag not in SET_TAGS:
            raise ValueError(f"Unknown set property '{self.tag}'")
        if self.tag in ALPHA_TAGS and self.alpha is None:
            raise ValueError(f"Set property '{self.tag}' requires an element α")
        if self.tag == ARROW_SATURATED and self.arrow is None:
            raise ValueError("Set property 'arrow-saturated' requires an arrow table")

    def __str__(self) -> str:
        if self.alpha is not None:
            return f"{self.tag}({self.alpha})"
        return self.tag


@dataclass(frozen=True)
class StructureProperty:
    """A structure-level predicate"""

    tag: str
    arrow: Optional[ArrowTable] = None

    def __post_init__(self):
        if self.tag not in STRUCTURE_TAGS:
            raise ValueError(f"Unknown structure property '{self.tag}'")
        if self.tag == MODUS_PONENS and self.arrow is None:
            raise ValueError("Structure property 'modus-ponens' requires an arrow table")

    def __str__(self) -> str:
        return self.tag


@dataclass(frozen=True)
class SetTables:
    """Every set-level predicate of one structure, indexed by subset bit pattern"""

    n: int
    closure: np.ndarray
    closed: np.ndarray
    strongly_closed: np.ndarray
    trivial: np.ndarray
    alpha_saturated: np.ndarray
    relatively_maximal: np.ndarray
    maximal_nontrivial: np.ndarray
    maximal_saturated: np.ndarray
    maximal_alpha_saturated: np.ndarray

    @property
    def nontrivial(self) -> np.ndarray:
        return ~self.trivial

    @property
    def saturated(self) -> np.ndarray:
        return self.alpha_saturated != 0


@lru_cache(maxsize=128)
def set_tables(structure: LogicalStructure) -> SetTables:
    """
    Compute every set-level predicate for all 2^n subsets at once

    Args:
        structure: Logical structure

    Returns:
        SetTables; α-parameterized predicates are stored as masks of α
    """
    n = structure.n
    full = structure.full
    C = structure.array
    idx = subset_indices(n)

    closed = C == idx
    trivial = C == full

    # AND of C(Γ∪{β}) over β ∉ Γ
    one_up = np.full(1 << n, full, dtype=np.int64)
    for beta in range(n):
        bit = 1 << beta
        outside = (idx & bit) == 0
        one_up[outside] &= C[idx[outside] | bit]
    alpha_saturated = ~C & one_up & full

    strictly_above = strict_superset_and(superset_and(C, n), n, full)
    relatively_maximal = ~C & strictly_above & full

    below = subset_or(C, n)
    strongly_closed = ((idx & ~C) == 0) & ((below & ~idx) == 0)

    nontrivial = ~trivial
    maximal_nontrivial = nontrivial & ~strict_superset_or(superset_or(nontrivial, n), n)
    saturated = alpha_saturated != 0
    maximal_saturated = saturated & ~strict_superset_or(superset_or(saturated, n), n)
    maximal_alpha_saturated = (
        alpha_saturated & ~strict_superset_or(superset_or(alpha_saturated, n), n) & full
    )

    logger.debug(f"Computed set tables for n={n} ({structure.origin})")
    return SetTables(
        n=n,
        closure=C,
        closed=closed,
        strongly_closed=strongly_closed,
        trivial=trivial,
        alpha_saturated=alpha_saturated,
        relatively_maximal=relatively_maximal,
        maximal_nontrivial=maximal_nontrivial,
        maximal_saturated=maximal_saturated,
        maximal_alpha_saturated=maximal_alpha_saturated,
    )


def _lowest(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


def _property_mask(structure: LogicalStructure, prop: SetProperty) -> np.ndarray:
    tables = set_tables(structure)
    tag = prop.tag
    if prop.alpha is not None:
        structure.check_element(prop.alpha)
    if tag == CLOSED:
        return tables.closed
    if tag == STRONGLY_CLOSED:
        return tables.strongly_closed
    if tag == TRIVIAL:
        return tables.trivial
    if tag == NONTRIVIAL:
        return tables.nontrivial
    if tag == ALPHA_SATURATED:
        return (tables.alpha_saturated >> prop.alpha & 1).astype(bool)
    if tag == SATURATED:
        return tables.saturated
    if tag == RELATIVELY_MAXIMAL:
        return (tables.relatively_maximal >> prop.alpha & 1).astype(bool)
    if tag == MAXIMAL_NONTRIVIAL:
        return tables.maximal_nontrivial
    if tag == MAXIMAL_SATURATED:
        return tables.maximal_saturated
    if tag == MAXIMAL_ALPHA_SATURATED:
        return (tables.maximal_alpha_saturated >> prop.alpha & 1).astype(bool)
    return _arrow_saturated_mask(structure, prop.arrow)


def _arrow_saturated_mask(structure: LogicalStructure, arrow: ArrowTable) -> np.ndarray:
    _require_arrow_width(structure, arrow)
    idx = subset_indices(structure.n)
    ok = np.ones(structure.size, dtype=bool)
    for alpha in range(structure.n):
        outside = (idx >> alpha & 1) == 0
        ok &= ~(outside & ((arrow.xi(alpha) & ~idx) != 0))
    return ok


def _require_arrow_width(structure: LogicalStructure, arrow: ArrowTable) -> None:
    if arrow.n != structure.n:
        raise WidthMismatchError(f"Arrow width {arrow.n} does not match carrier size {structure.n}")


def enumerate_sets(structure: LogicalStructure, prop: SetProperty, budget: Optional[Budget] = None) -> List[int]:
    """
    List every subset with a property, ascending by bit pattern

    Args:
        structure: Logical structure
        prop: Set property
        budget: Evaluation budget (defaults to configured caps)

    Returns:
        Subset bit patterns in canonical order
    """
    if prop.tag == STRONGLY_CLOSED:
        resolve_budget(budget).require("strongly_closed", structure.n)
    return [int(g) for g in np.flatnonzero(_property_mask(structure, prop))]


def check_set(structure: LogicalStructure, prop: SetProperty, gamma: int, budget: Optional[Budget] = None) -> Verdict:
    """
    Decide a set-level property for one subset by literal quantifier expansion

    Args:
        structure: Logical structure
        prop: Set property
        gamma: Subset bit pattern
        budget: Evaluation budget (defaults to configured caps)

    Returns:
        Verdict with a witness when the property fails

    Raises:
        WidthMismatchError: If Γ or α do not fit the carrier
        BudgetExceededError: If the carrier is above the strongly-closed cap
    """
    structure.check_subset(gamma)
    if prop.alpha is not None:
        structure.check_element(prop.alpha)
    n = structure.n
    full = structure.full
    c = structure.consequences(gamma)
    tag = prop.tag

    if tag == CLOSED:
        if c == gamma:
            return Verdict.yes()
        return Verdict.no(gamma=subset_witness(gamma), consequences=subset_witness(c), element=_lowest(c ^ gamma))

    if tag == STRONGLY_CLOSED:
        resolve_budget(budget).require("strongly_closed", n)
        missing = gamma & ~c
        if missing:
            return Verdict.no(condition="reflexive-part", gamma=subset_witness(gamma), alpha=_lowest(missing))
        for sub in submasks(gamma):
            escaped = structure.consequences(sub) & ~gamma
            if escaped:
                return Verdict.no(
                    condition="subset-closure", gamma_prime=subset_witness(sub), alpha=_lowest(escaped)
                )
        return Verdict.yes()

    if tag == TRIVIAL:
        if c == full:
            return Verdict.yes()
        return Verdict.no(gamma=subset_witness(gamma), missing=_lowest(full & ~c))

    if tag == NONTRIVIAL:
        if c != full:
            return Verdict.yes()
        return Verdict.no(gamma=subset_witness(gamma), consequences=subset_witness(c))

    if tag == ALPHA_SATURATED:
        return _check_alpha_saturated(structure, gamma, prop.alpha)

    if tag == SATURATED:
        if set_tables(structure).alpha_saturated[gamma]:
            return Verdict.yes()
        return Verdict.no(gamma=subset_witness(gamma), reason="not α-saturated for any α")

    if tag == RELATIVELY_MAXIMAL:
        alpha = prop.alpha
        if c >> alpha & 1:
            return Verdict.no(gamma=subset_witness(gamma), derives=alpha)
        for sigma in proper_supermasks(gamma, n):
            if not structure.consequences(sigma) >> alpha & 1:
                return Verdict.no(sigma=subset_witness(sigma), alpha=alpha)
        return Verdict.yes()

    if tag in (MAXIMAL_NONTRIVIAL, MAXIMAL_SATURATED, MAXIMAL_ALPHA_SATURATED):
        base_tag = {
            MAXIMAL_NONTRIVIAL: NONTRIVIAL,
            MAXIMAL_SATURATED: SATURATED,
            MAXIMAL_ALPHA_SATURATED: ALPHA_SATURATED,
        }[tag]
        base = SetProperty(base_tag, alpha=prop.alpha)
        verdict = check_set(structure, base, gamma, budget)
        if not verdict:
            return verdict
        family = _property_mask(structure, base)
        for sigma in proper_supermasks(gamma, n):
            if family[sigma]:
                return Verdict.no(sigma=subset_witness(sigma), reason=f"strictly larger {base}")
        return Verdict.yes()

    _require_arrow_width(structure, prop.arrow)
    for alpha in range(n):
        if gamma >> alpha & 1:
            continue
        missing = prop.arrow.xi(alpha) & ~gamma
        if missing:
            return Verdict.no(alpha=alpha, missing=_lowest(missing))
    return Verdict.yes()


def _check_alpha_saturated(structure: LogicalStructure, gamma: int, alpha: int) -> Verdict:
    if structure.derives(gamma, alpha):
        return Verdict.no(gamma=subset_witness(gamma), derives=alpha)
    for beta in range(structure.n):
        if gamma >> beta & 1:
            continue
        if not structure.derives(gamma | 1 << beta, alpha):
            return Verdict.no(beta=beta, alpha=alpha)
    return Verdict.yes()


def _first_row(bad_rows: List[np.ndarray]) -> Optional[tuple]:
    """Smallest (Γ, k) over per-k boolean rows indexed by Γ"""
    best = None
    for k, row in enumerate(bad_rows):
        hits = np.flatnonzero(row)
        if len(hits) and (best is None or hits[0] < best[0]):
            best = (int(hits[0]), k)
    return best


def check_structure(structure: LogicalStructure, prop: StructureProperty, budget: Optional[Budget] = None) -> Verdict:
    """
    Decide a structure-level property exactly

    Args:
        structure: Logical structure
        prop: Structure property
        budget: Evaluation budget (defaults to configured caps)

    Returns:
        Verdict with the violating (Γ, Σ, α, β) components on failure

    Raises:
        BudgetExceededError: If the carrier is above the soft cap for the check
    """
    budget = resolve_budget(budget)
    n = structure.n
    C = structure.array
    idx = subset_indices(n)
    tag = prop.tag

    if tag == REFLEXIVE:
        hits = np.flatnonzero(idx & ~C)
        if not len(hits):
            return Verdict.yes()
        gamma = int(hits[0])
        return Verdict.no(gamma=subset_witness(gamma), alpha=_lowest(gamma & ~int(C[gamma])))

    if tag == MONOTONE:
        rows = []
        for i in range(n):
            bit = 1 << i
            upper = C[idx | bit]
            rows.append(((idx & bit) == 0) & ((C & ~upper) != 0))
        first = _first_row(rows)
        if first is None:
            return Verdict.yes()
        gamma, i = first
        sigma = gamma | 1 << i
        return Verdict.no(
            gamma=subset_witness(gamma),
            sigma=subset_witness(sigma),
            alpha=_lowest(int(C[gamma]) & ~int(C[sigma])),
        )

    if tag == TRANSITIVE:
        budget.require("transitive", n)
        for gamma in range(structure.size):
            c = int(C[gamma])
            below = (idx & ~c) == 0
            escaped = C & ~c & np.where(below, -1, 0)
            hits = np.flatnonzero(escaped)
            if len(hits):
                sigma = int(hits[0])
                return Verdict.no(
                    gamma=subset_witness(gamma), sigma=subset_witness(sigma), alpha=_lowest(int(escaped[sigma]))
                )
        return Verdict.yes()

    if tag == TARSKI_BY_DEF:
        for axiom in (REFLEXIVE, MONOTONE, TRANSITIVE):
            verdict = check_structure(structure, StructureProperty(axiom), budget)
            if not verdict:
                return Verdict(False, {"axiom": axiom, **verdict.witness})
        return Verdict.yes()

    if tag == CUT:
        rows = []
        for alpha in range(n):
            has_alpha = (C >> alpha & 1) == 1
            rows.append(has_alpha & ((C[idx | 1 << alpha] & ~C) != 0))
        first = _first_row(rows)
        if first is None:
            return Verdict.yes()
        gamma, alpha = first
        beta = _lowest(int(C[gamma | 1 << alpha]) & ~int(C[gamma]))
        return Verdict.no(gamma=subset_witness(gamma), alpha=alpha, beta=beta)

    if tag == MIXED_CUT:
        budget.require("mixed_cut", n)
        for gamma in range(structure.size):
            c = int(C[gamma])
            union = C[idx | gamma]
            for alpha in from_bits(c):
                escaped = C[idx | 1 << alpha] & ~union
                hits = np.flatnonzero(escaped)
                if len(hits):
                    sigma = int(hits[0])
                    return Verdict.no(
                        gamma=subset_witness(gamma),
                        sigma=subset_witness(sigma),
                        alpha=alpha,
                        beta=_lowest(int(escaped[sigma])),
                    )
        return Verdict.yes()

    if tag == FINITARY:
        # every Γ is its own finite Γ₀
        return Verdict.yes()

    return modus_ponens(structure, prop.arrow)


def modus_ponens(structure: LogicalStructure, arrow: ArrowTable) -> Verdict:
    """Γ ⊢ α and Γ ⊢ α→β imply Γ ⊢ β, for all Γ, α, β"""
    _require_arrow_width(structure, arrow)
    C = structure.array
    n = structure.n
    rows = []
    pairs = []
    for alpha in range(n):
        for beta in range(n):
            implication = arrow.apply(alpha, beta)
            rows.append(((C >> alpha & 1) & (C >> implication & 1) & ~(C >> beta & 1) & 1) == 1)
            pairs.append((alpha, beta))
    first = _first_row(rows)
    if first is None:
        return Verdict.yes()
    gamma, k = first
    alpha, beta = pairs[k]
    return Verdict.no(gamma=subset_witness(gamma), alpha=alpha, beta=beta)


def batens_condition(structure: LogicalStructure, arrow: ArrowTable) -> Verdict:
    """C(Σ ∪ ξ_β) ⊆ C(Σ) for every Σ and β ∉ Σ"""
    _require_arrow_width(structure, arrow)
    C = structure.array
    idx = subset_indices(structure.n)
    rows = []
    for beta in range(structure.n):
        outside = (idx >> beta & 1) == 0
        rows.append(outside & ((C[idx | arrow.xi(beta)] & ~C) != 0))
    first = _first_row(rows)
    if first is None:
        return Verdict.yes()
    sigma, beta = first
    return Verdict.no(sigma=subset_witness(sigma), beta=beta)


XI = "xi"
MP_QUERY = "modus-ponens"
ARROW_QUERIES = (XI, ARROW_SATURATED, MP_QUERY)


def arrow_query(
    structure: LogicalStructure,
    arrow: ArrowTable,
    query: str,
    gamma: Optional[int] = None,
    alpha: Optional[int] = None,
):
    """
    Answer an arrow-connective query

    Args:
        structure: Logical structure
        arrow: Arrow table on the same carrier
        query: 'xi' (needs alpha), 'arrow-saturated' (needs gamma) or 'modus-ponens'
        gamma: Subset bit pattern for 'arrow-saturated'
        alpha: Element for 'xi'

    Returns:
        Subset bit pattern for 'xi', Verdict otherwise
    """
    _require_arrow_width(structure, arrow)
    if query == XI:
        if alpha is None:
            raise ValueError("Query 'xi' requires an element α")
        return arrow.xi(alpha)
    if query == ARROW_SATURATED:
        if gamma is None:
            raise ValueError("Query 'arrow-saturated' requires a subset Γ")
        return check_set(structure, SetProperty(ARROW_SATURATED, arrow=arrow), gamma)
    if query == MP_QUERY:
        return modus_ponens(structure, arrow)
    raise ValueError(f"Unknown arrow query '{query}' (expected one of {', '.join(ARROW_QUERIES)})")
