"""Check the theorem registry over a corpus and collect counterexamples"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from app.config import Budget, resolve_budget
from app.core import ArrowTable, LogicalStructure
from app.errors import BudgetExceededError, LsxError
from app.propcheck.generators import GeneratorSpec, Sample, corpus as generate_corpus, generate
from app.propcheck.registry import SampleFacts, Theorem, TheoremRegistry
from app.utils.conversions import from_bits, to_bits

logger = logging.getLogger(__name__)

NOT_FIRED = "not-fired"
PASSED = "passed"
FAILED = "failed"
SKIPPED = "skipped"

Outcome = Tuple[str, str, Optional[Dict[str, Any]]]

Corpus = Union[GeneratorSpec, Sequence[Sample]]


@dataclass
class TheoremCount:
    fired: int = 0
    checked: int = 0
    failures: int = 0
    skipped: int = 0

    @property
    def uncovered(self) -> bool:
        return self.fired == 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "fired": self.fired,
            "checked": self.checked,
            "failures": self.failures,
            "skipped": self.skipped,
            "uncovered": self.uncovered,
        }


@dataclass(frozen=True)
class Failure:
    """A counterexample: the sample, the witness, and a smaller carrier where it persists"""

    theorem_id: str
    anchor: str
    sample: str
    index: int
    n: int
    table: Tuple[int, ...]
    witness: Optional[Dict[str, Any]]
    minimized: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "theorem": self.theorem_id,
            "anchor": self.anchor,
            "sample": self.sample,
            "index": self.index,
            "n": self.n,
            "table": [from_bits(v) for v in self.table],
            "witness": self.witness,
            "minimized": self.minimized,
        }


@dataclass
class RegistryReport:
    samples: int = 0
    counts: Dict[str, TheoremCount] = field(default_factory=dict)
    failures: List[Failure] = field(default_factory=list)
    # first budget overflow per skipped theorem: check, n, cap
    budget_skips: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    elapsed_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def uncovered(self) -> List[str]:
        return [theorem_id for theorem_id, count in self.counts.items() if count.uncovered]

    @property
    def skipped(self) -> List[str]:
        return [theorem_id for theorem_id, count in self.counts.items() if count.skipped]

    def raise_for_skips(self) -> None:
        """
        Raise when a selected theorem was not evaluated on some sample

        Raises:
            BudgetExceededError: For the first recorded overflow
        """
        if not self.budget_skips:
            return
        overflow = next(iter(self.budget_skips.values()))
        logger.error(f"Not evaluated within budget: {', '.join(self.skipped)}")
        raise BudgetExceededError(overflow["check"], overflow["n"], overflow["cap"])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "samples": self.samples,
            "passed": self.passed,
            "theorems": {theorem_id: count.to_dict() for theorem_id, count in self.counts.items()},
            "uncovered": self.uncovered,
            "skipped": self.skipped,
            "failures": [f.to_dict() for f in self.failures],
        }


def check_theorem(theorem: Theorem, facts: SampleFacts) -> Outcome:
    """
    Evaluate one theorem on one structure

    Returns:
        (theorem id, status, witness) where status is not-fired, passed, failed or skipped
    """
    try:
        if not theorem.applies(facts):
            return theorem.theorem_id, NOT_FIRED, None
        verdict = theorem.conclusion(facts)
    except BudgetExceededError as e:
        logger.debug(f"{theorem.theorem_id} skipped: {e}")
        return theorem.theorem_id, SKIPPED, {"check": e.check, "n": e.n, "cap": e.cap}
    if verdict.holds:
        return theorem.theorem_id, PASSED, None
    return theorem.theorem_id, FAILED, verdict.witness


def evaluate_sample(sample: Sample, theorems: Iterable[Theorem], budget: Optional[Budget] = None) -> List[Outcome]:
    facts = SampleFacts(sample.structure, sample.arrow, budget)
    return [check_theorem(theorem, facts) for theorem in theorems]


def restrict(structure: LogicalStructure, keep: Sequence[int]) -> LogicalStructure:
    """
    The structure on the kept elements, renumbered 0..m-1, with C'(Γ) = C(Γ) ∩ keep

    Raises:
        EmptyRelationError: If the restricted relation is empty
    """
    keep = list(keep)
    kept = to_bits(keep)
    table = []
    for local in range(1 << len(keep)):
        original = to_bits(keep[i] for i in from_bits(local))
        image = structure.table[original] & kept
        table.append(to_bits(keep.index(x) for x in from_bits(image)))
    return LogicalStructure(len(keep), tuple(table), structure.origin)


def restrict_arrow(arrow: Optional[ArrowTable], keep: Sequence[int]) -> Optional[ArrowTable]:
    """The arrow on the kept elements, or None when some α→β leaves them"""
    if arrow is None:
        return None
    keep = list(keep)
    op = []
    for a in keep:
        row = []
        for b in keep:
            value = arrow.op[a][b]
            if value not in keep:
                return None
            row.append(keep.index(value))
        op.append(tuple(row))
    return ArrowTable(len(keep), tuple(op), arrow.name)


def _fails(theorem: Theorem, structure: LogicalStructure, arrow: Optional[ArrowTable], budget: Budget) -> bool:
    try:
        facts = SampleFacts(structure, arrow, budget)
        return theorem.applies(facts) and not theorem.conclusion(facts).holds
    except LsxError:
        return False


def minimize(theorem: Theorem, sample: Sample, budget: Optional[Budget] = None) -> Dict[str, Any]:
    """
    Greedily drop carrier elements while the failure persists

    Best effort: the result is a local minimum under single-element removal,
    not a smallest counterexample.

    Returns:
        The kept original elements with the restricted table
    """
    budget = resolve_budget(budget)
    keep = list(range(sample.structure.n))
    structure = sample.structure
    shrunk = True
    while shrunk and len(keep) > 1:
        shrunk = False
        for element in list(keep):
            trial = [x for x in keep if x != element]
            try:
                candidate = restrict(sample.structure, trial)
            except LsxError:
                continue
            if _fails(theorem, candidate, restrict_arrow(sample.arrow, trial), budget):
                keep, structure, shrunk = trial, candidate, True
                break
    logger.debug(f"Minimized {theorem.theorem_id} counterexample from n={sample.structure.n} to n={len(keep)}")
    return {"kept": keep, "n": len(keep), "table": [from_bits(v) for v in structure.table]}


_worker_registry: Optional[TheoremRegistry] = None


def _evaluate_index(job: Tuple[GeneratorSpec, int, Optional[List[str]], Budget]) -> Tuple[int, List[Outcome]]:
    """Process-pool entry point; rebuilds the default registry once per worker"""
    global _worker_registry
    spec, index, ids, budget = job
    if _worker_registry is None:
        _worker_registry = TheoremRegistry.default()
    return index, evaluate_sample(generate(spec, index), _worker_registry.select(ids), budget)


def _record(
    report: RegistryReport,
    sample: Sample,
    outcomes: List[Outcome],
    registry: TheoremRegistry,
    minimize_failures: bool,
    budget: Budget,
) -> None:
    report.samples += 1
    for theorem_id, status, witness in outcomes:
        count = report.counts[theorem_id]
        if status == SKIPPED:
            count.skipped += 1
            report.budget_skips.setdefault(theorem_id, witness or {})
            continue
        if status == NOT_FIRED:
            continue
        count.fired += 1
        count.checked += 1
        if status == FAILED:
            count.failures += 1
            theorem = registry[theorem_id]
            failure = Failure(
                theorem_id,
                theorem.anchor,
                sample.describe(),
                sample.index,
                sample.structure.n,
                sample.structure.table,
                witness,
                minimize(theorem, sample, budget) if minimize_failures else None,
            )
            report.failures.append(failure)
            logger.warning(f"❌ {theorem_id} fails on {sample.describe()}: {witness}")


def run_registry(
    corpus: Corpus,
    ids: Optional[Sequence[str]] = None,
    registry: Optional[TheoremRegistry] = None,
    extra: Iterable[Sample] = (),
    workers: int = 1,
    minimize_failures: bool = True,
    budget: Optional[Budget] = None,
) -> RegistryReport:
    """
    Check theorems over a corpus

    Each theorem's conclusion is asserted on every structure where its
    hypothesis holds. Results are merged in sample order whatever the
    number of workers.

    Args:
        corpus: A generator spec or an explicit list of samples
        ids: Theorem ids to check; None checks every registered theorem
        registry: Theorem registry (defaults to T01..T33)
        extra: Additional samples checked after the corpus (e.g. gallery structures)
        workers: Processes for a generated corpus with the default registry
        minimize_failures: Shrink every counterexample's carrier
        budget: Evaluation budget (defaults to configured caps)

    Returns:
        RegistryReport with per-theorem counts and full counterexamples

    Raises:
        ValueError: If an id is not registered
    """
    budget = resolve_budget(budget)
    custom = registry is not None
    registry = registry or TheoremRegistry.default()
    theorems = registry.select(ids)
    selected = [t.theorem_id for t in theorems]
    report = RegistryReport(counts={theorem_id: TheoremCount() for theorem_id in selected})
    start = time.perf_counter()

    if isinstance(corpus, GeneratorSpec) and workers > 1 and not custom:
        logger.info(f"Checking {corpus.count} {corpus.strategy} sample(s) with {workers} workers")
        jobs = [(corpus, index, selected, budget) for index in range(corpus.count)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = dict(pool.map(_evaluate_index, jobs, chunksize=max(1, len(jobs) // (workers * 8))))
        for index in range(corpus.count):
            _record(report, generate(corpus, index), results[index], registry, minimize_failures, budget)
    else:
        samples = generate_corpus(corpus) if isinstance(corpus, GeneratorSpec) else corpus
        for sample in samples:
            _record(report, sample, evaluate_sample(sample, theorems, budget), registry, minimize_failures, budget)

    for sample in extra:
        _record(report, sample, evaluate_sample(sample, theorems, budget), registry, minimize_failures, budget)

    report.elapsed_seconds = time.perf_counter() - start
    status = "✅" if report.passed else "❌"
    logger.info(
        f"{status} Checked {report.samples} sample(s) against {len(theorems)} theorem(s): "
        f"{len(report.failures)} failure(s) in {report.elapsed_seconds:.1f}s"
    )
    if report.uncovered:
        logger.warning(f"Hypothesis never fired for: {', '.join(report.uncovered)}")
    return report
