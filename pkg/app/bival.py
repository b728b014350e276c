"""Distinguished bivaluation sets and the semantic checks built on them"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from app.classify import classify
from app.config import Budget, resolve_budget
from app.core import (
    BivaluationSet,
    LogicalStructure,
    Verdict,
    induce,
    strict_subrelation,
    subrelation_witness,
    subset_witness,
)
from app.errors import EmptyRelationError, PreconditionError, WidthMismatchError
from app.properties import (
    CLOSED,
    SATURATED,
    STRONGLY_CLOSED,
    SetProperty,
    enumerate_sets,
    set_tables,
)
from app.utils.conversions import from_bits

logger = logging.getLogger(__name__)

SCS = "scs"
SCS_STAR = "scs-star"
RELMAX = "relmax"
SUSZKO_CLOSED = "suszko"

KINDS = (SCS, SCS_STAR, RELMAX, SUSZKO_CLOSED)


@dataclass(frozen=True)
class NamedBivaluationSet:
    """
    A bivaluation set built from a family of subsets of a structure

    For scs-star, annotations map each member to the (β, α) buckets it belongs to.
    """

    kind: str
    base: BivaluationSet
    annotations: Dict[int, Tuple[Tuple[int, int], ...]] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.base)

    def to_dict(self) -> Dict[str, Any]:
        doc = {"kind": self.kind, "valuations": [from_bits(v) for v in self.base]}
        if self.annotations:
            doc["buckets"] = [
                {"valuation": from_bits(v), "pairs": [{"beta": b, "alpha": a} for b, a in pairs]}
                for v, pairs in sorted(self.annotations.items())
            ]
        return doc


def extract(structure: LogicalStructure, kind: str, budget: Optional[Budget] = None) -> NamedBivaluationSet:
    """
    Build one of the distinguished valuation sets of a structure

    Args:
        structure: Logical structure
        kind: 'scs', 'scs-star', 'relmax' or 'suszko'
        budget: Evaluation budget (defaults to configured caps)

    Returns:
        NamedBivaluationSet in canonical ascending order; possibly empty
    """
    resolve_budget(budget).require("bival", structure.n)
    n = structure.n
    if kind not in KINDS:
        raise ValueError(f"Unknown bivaluation set kind '{kind}' (expected one of {', '.join(KINDS)})")

    if kind == SUSZKO_CLOSED:
        members = enumerate_sets(structure, SetProperty(CLOSED), budget)
        return NamedBivaluationSet(kind, BivaluationSet.of(n, members))

    tables = set_tables(structure)
    if kind == RELMAX:
        members = [int(g) for g in np.flatnonzero(tables.relatively_maximal)]
        return NamedBivaluationSet(kind, BivaluationSet.of(n, members))

    strongly_closed = set(enumerate_sets(structure, SetProperty(STRONGLY_CLOSED), budget))
    scs = [g for g in enumerate_sets(structure, SetProperty(SATURATED), budget) if g in strongly_closed]
    if kind == SCS:
        return NamedBivaluationSet(kind, BivaluationSet.of(n, scs))

    annotations = {}
    for sigma in scs:
        closure = structure.consequences(sigma)
        pairs = []
        for beta in from_bits(int(tables.alpha_saturated[sigma])):
            singleton = structure.consequences(1 << beta)
            for alpha in range(n):
                if not closure >> alpha & 1 and singleton >> alpha & 1:
                    pairs.append((beta, alpha))
        if pairs:
            annotations[sigma] = tuple(pairs)
    return NamedBivaluationSet(kind, BivaluationSet.of(n, annotations.keys()), annotations)


def _pair(witness: Optional[Tuple[int, int]]) -> Optional[Dict[str, Any]]:
    if witness is None:
        return None
    gamma, alpha = witness
    return {"gamma": subset_witness(gamma), "alpha": alpha}


@dataclass(frozen=True)
class Comparison:
    """Soundness and completeness of ⊢ with respect to ⊢_V"""

    sound: bool
    complete: bool
    sound_witness: Optional[Dict[str, Any]] = None
    complete_witness: Optional[Dict[str, Any]] = None

    @property
    def adequate(self) -> bool:
        return self.sound and self.complete

    def to_dict(self) -> Dict[str, Any]:
        return {
            "sound": self.sound,
            "complete": self.complete,
            "adequate": self.adequate,
            "sound_witness": self.sound_witness,
            "complete_witness": self.complete_witness,
        }


def _compare(structure: LogicalStructure, valuations: BivaluationSet) -> Comparison:
    if valuations.n != structure.n:
        raise WidthMismatchError(f"Valuation width {valuations.n} does not match carrier size {structure.n}")
    semantic = induce(valuations, allow_empty=True)
    unsound = subrelation_witness(structure, semantic)
    incomplete = subrelation_witness(semantic, structure)
    return Comparison(unsound is None, incomplete is None, _pair(unsound), _pair(incomplete))


def compare(structure: LogicalStructure, valuations: BivaluationSet, allow_empty: bool = False) -> Comparison:
    """
    Compare ⊢ with the relation induced by a nonempty valuation set

    Args:
        structure: Logical structure
        valuations: Nonempty bivaluation set of the same width
        allow_empty: Read an empty set as inducing the total relation instead of raising

    Returns:
        Comparison; witnesses are the first failing pairs (Γ, α)

    Raises:
        EmptyRelationError: If the valuation set is empty
    """
    if not len(valuations) and not allow_empty:
        raise EmptyRelationError("Cannot compare against an empty bivaluation set")
    return _compare(structure, valuations)


def suszko_adequate(structure: LogicalStructure, budget: Optional[Budget] = None) -> Verdict:
    """Whether the closed-set valuations form a Suszko set (nonempty and adequate)"""
    candidate = extract(structure, SUSZKO_CLOSED, budget)
    if not len(candidate):
        return Verdict.no(reason="no closed sets")
    comparison = _compare(structure, candidate.base)
    if comparison.adequate:
        return Verdict.yes()
    return Verdict(False, comparison.sound_witness or comparison.complete_witness)


@dataclass(frozen=True)
class Deletion:
    removed: int
    strict: bool
    witness: Optional[Dict[str, Any]]
    empty_remainder: bool


@dataclass(frozen=True)
class MinimalityReport:
    deletions: Tuple[Deletion, ...]
    sampled: Tuple[Tuple[Tuple[int, ...], bool], ...]

    @property
    def holds(self) -> bool:
        return all(d.strict for d in self.deletions) and all(sound for _, sound in self.sampled)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "holds": self.holds,
            "deletions": [
                {
                    "removed": from_bits(d.removed),
                    "strict": d.strict,
                    "witness": d.witness,
                    "note": "deletion yields empty set; induced relation is total" if d.empty_remainder else None,
                }
                for d in self.deletions
            ],
            "sampled": [{"subset": [from_bits(v) for v in b], "sound": sound} for b, sound in self.sampled],
        }


def minimality_probe(
    structure: LogicalStructure,
    samples: int = 16,
    seed: int = 0,
    budget: Optional[Budget] = None,
) -> MinimalityReport:
    """
    Check that no proper subset of SCS is adequate for a TL-4 structure

    Every single deletion must strictly enlarge the induced relation, and
    every sampled subset must stay sound.

    Args:
        structure: A TL-4 structure
        samples: Number of random subsets of SCS to check for soundness
        seed: Seed for the subset sampler
        budget: Evaluation budget (defaults to configured caps)

    Raises:
        PreconditionError: If the structure is not TL-4 or SCS is empty
    """
    if not classify(structure, budget)["tl4"]:
        raise PreconditionError("Minimality probe requires a TL-4 structure")
    scs = extract(structure, SCS, budget).base
    if not len(scs):
        raise PreconditionError("Minimality probe requires a nonempty SCS")

    deletions = []
    for removed in scs:
        remainder = scs.without(removed)
        strict, witness = strict_subrelation(structure, induce(remainder, allow_empty=True))
        deletions.append(Deletion(removed, strict, _pair(witness), not len(remainder)))

    rng = np.random.default_rng(seed)
    sampled = []
    members = list(scs)
    for _ in range(samples):
        keep = rng.random(len(members)) < 0.5
        subset = BivaluationSet.of(structure.n, (v for v, k in zip(members, keep) if k))
        sound = subrelation_witness(structure, induce(subset, allow_empty=True)) is None
        sampled.append((subset.valuations, sound))

    report = MinimalityReport(tuple(deletions), tuple(sampled))
    logger.debug(f"Minimality probe over {len(members)} valuation(s): holds={report.holds}")
    return report


@dataclass(frozen=True)
class RepresentationReport:
    """Both representation equivalences: TL-4 against SCS*, Tarski against closed sets"""

    scs_star_adequate: bool
    tl4: bool
    suszko_adequate: bool
    tarski: bool
    scs_star_size: int
    suszko_size: int

    @property
    def adequate(self) -> bool:
        return self.scs_star_adequate

    @property
    def consistent(self) -> bool:
        return self.scs_star_adequate == self.tl4 and self.suszko_adequate == self.tarski

    def to_dict(self) -> Dict[str, Any]:
        return {
            "scs_star_adequate": self.scs_star_adequate,
            "tl4": self.tl4,
            "suszko_adequate": self.suszko_adequate,
            "tarski": self.tarski,
            "scs_star_size": self.scs_star_size,
            "suszko_size": self.suszko_size,
            "consistent": self.consistent,
        }


def representation_check(structure: LogicalStructure, budget: Optional[Budget] = None) -> RepresentationReport:
    """
    Decide ⊢ = ⊢_SCS* and ⊢ = ⊢_closed and compare them with the classifier

    An empty SCS* induces the total relation; an empty closed-set family is
    never a Suszko set.
    """
    report = classify(structure, budget)
    scs_star = extract(structure, SCS_STAR, budget)
    star_adequate = _compare(structure, scs_star.base).adequate
    suszko = suszko_adequate(structure, budget)
    result = RepresentationReport(
        scs_star_adequate=star_adequate,
        tl4=report["tl4"],
        suszko_adequate=suszko.holds,
        tarski=report["tarski"],
        scs_star_size=len(scs_star),
        suszko_size=len(extract(structure, SUSZKO_CLOSED, budget)),
    )
    if not result.consistent:
        logger.warning(f"Representation check disagrees with the classifier: {result.to_dict()}")
    return result


def relmax_equals_scs(structure: LogicalStructure, budget: Optional[Budget] = None) -> bool:
    """RELMAX and SCS coincide as sets"""
    return extract(structure, RELMAX, budget).base == extract(structure, SCS, budget).base
