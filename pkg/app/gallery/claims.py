"""Claims of a gallery item and the report of running them"""

import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional

logger = logging.getLogger(__name__)

EXHAUSTIVE = "exhaustive"
CASE_ANALYSIS = "case-analysis"
SYMMETRY_REDUCTION = "symmetry-reduction"

METHODS = (EXHAUSTIVE, CASE_ANALYSIS, SYMMETRY_REDUCTION)

# claim ids naming a structure-level class; their observed values feed the separation matrix
CLASS_KEYS = ("tarski", "lindI", "lindII", "lindIII", "lindIV")


@dataclass(frozen=True)
class Claim:
    """
    One assertion of a gallery item with its decision procedure

    The procedure returns the observed truth value; the claim passes when it
    equals the expected one. method records how infinite quantifiers were
    reduced to finitely many checks.
    """

    claim_id: str
    statement: str
    expected: bool
    method: str
    procedure: Callable[[], bool] = field(compare=False, repr=False)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"Unknown discharge method '{self.method}' for claim '{self.claim_id}'")

    def run(self) -> "ClaimResult":
        try:
            observed = bool(self.procedure())
        except Exception as e:
            logger.error(f"Claim '{self.claim_id}' raised: {e}")
            return ClaimResult(self.claim_id, self.statement, self.expected, None, self.method, str(e))
        return ClaimResult(self.claim_id, self.statement, self.expected, observed, self.method)


@dataclass(frozen=True)
class ClaimResult:
    claim_id: str
    statement: str
    expected: bool
    observed: Optional[bool]
    method: str
    error: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.error is None and self.observed == self.expected

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "id": self.claim_id,
            "statement": self.statement,
            "expected": self.expected,
            "observed": self.observed,
            "method": self.method,
            "passed": self.passed,
        }
        if self.error is not None:
            doc["error"] = self.error
        return doc


@dataclass
class ClaimReport:
    item_id: str
    results: List[ClaimResult] = field(default_factory=list)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[ClaimResult]:
        return [r for r in self.results if not r.passed]

    def verdicts(self) -> Dict[str, bool]:
        """
        Observed class verdicts, with TL-i derived as Tarski and Lindenbaum-i

        Returns:
            Mapping from class key to observed verdict for the classes the item speaks about
        """
        observed = {
            r.claim_id: r.observed for r in self.results if r.claim_id in CLASS_KEYS and r.observed is not None
        }
        if "tarski" in observed:
            for i, lind in enumerate(CLASS_KEYS[1:], start=1):
                if lind in observed:
                    observed[f"tl{i}"] = observed["tarski"] and observed[lind]
        return observed

    def to_dict(self) -> Dict[str, Any]:
        return {
            "item": self.item_id,
            "passed": self.passed,
            "claims": [r.to_dict() for r in self.results],
            "verdicts": self.verdicts(),
        }


def run_all(
    item_id: str, claims: List[Claim], extra: Optional[Callable[[], List[ClaimResult]]] = None
) -> ClaimReport:
    """
    Run claims in order; a raising procedure is a failed entry, never an error

    extra produces further results (finite-window checks) appended after the claims.
    """
    start = time.perf_counter()
    report = ClaimReport(item_id, [claim.run() for claim in claims])
    if extra is not None:
        try:
            report.results.extend(extra())
        except Exception as e:
            logger.error(f"Extra checks for '{item_id}' raised: {e}")
            report.results.append(ClaimResult("window", "finite-window checks", True, None, EXHAUSTIVE, str(e)))
    report.elapsed_seconds = time.perf_counter() - start
    status = "✅" if report.passed else "❌"
    logger.info(f"{status} {item_id}: {len(report.results) - len(report.failures)}/{len(report.results)} claims passed")
    return report
