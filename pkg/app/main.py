"""Main entry point for the logical structures explorer CLI"""

import sys
import time
import logging
import argparse
from typing import Any, Dict, List, Optional

from app.bival import KINDS, compare, extract, minimality_probe
from app.characterize import LINDENBAUM_III, LINDENBAUM_IV, TARSKI, TL4, all_statements
from app.classify import VERDICT_KEYS, classify
from app.config import Budget, load_config
from app.core import ArrowTable, LogicalStructure
from app.errors import BudgetExceededError
from app.gallery.catalog import GALLERY, initialize_gallery, run_claims, separations
from app.gallery.three_element import THREE_ELEMENT_ID, three_element_structure
from app.properties import (
    ALPHA_TAGS,
    ARROW_SATURATED,
    MODUS_PONENS,
    SET_TAGS,
    STRUCTURE_TAGS,
    SetProperty,
    StructureProperty,
    batens_condition,
    check_set,
    check_structure,
    enumerate_sets,
)
from app.propcheck.generators import STRATEGIES, GeneratorSpec, Sample, exhaustive
from app.propcheck.registry import parse_theorem_ids
from app.propcheck.runner import RegistryReport, run_registry
from app.report import ReportDocument
from app.structure_file import load_arrow, load_structure
from app.utils.conversions import from_bits, parse_subset

# Configure logging; stdout carries only the report
logging.basicConfig(
    level=logging.INFO,
    format="%(asctime)s %(levelname)-8s %(message)s",
    datefmt="%Y-%m-%dT%H:%M:%S",
)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_ERROR = 2

BATENS = "batens"
CHECK_PROPERTIES = SET_TAGS + STRUCTURE_TAGS + (BATENS,)

# characterization theorem -> classifier key it must agree with
CHARACTERIZED = {TARSKI: "tarski", LINDENBAUM_IV: "lindIV", LINDENBAUM_III: "lindIII", TL4: "tl4"}


def _common_options(defaults: bool) -> argparse.ArgumentParser:
    """
    Flags accepted both before and after the subcommand

    The subcommand copy suppresses its defaults so it never overrides a flag
    given before the subcommand.
    """
    parser = argparse.ArgumentParser(add_help=False)
    default = (lambda value: value) if defaults else (lambda value: argparse.SUPPRESS)
    parser.add_argument("--json", action="store_true", default=default(False), help="Emit the JSON report")
    parser.add_argument("--config", default=default(None), help="Path to config.yml")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true", default=default(False), help="Debug logging")
    verbosity.add_argument("-q", "--quiet", action="store_true", default=default(False), help="Warnings only")
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lsx",
        description="Decide Tarski and Lindenbaum types of finite logical structures",
        parents=[_common_options(True)],
    )
    common = _common_options(False)
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="Decide one property")
    check.add_argument("file", help="Structure file (.ls)")
    check.add_argument("--property", required=True, choices=CHECK_PROPERTIES)
    check.add_argument("--gamma", help="Subset for set properties, e.g. 0,1 or empty")
    check.add_argument("--alpha", type=int, help="Element for α-parameterized properties")
    check.add_argument("--arrow", help="Arrow file (.arrow) for arrow properties")

    classify_cmd = commands.add_parser("classify", parents=[common], help="Classify a structure")
    classify_cmd.add_argument("file", help="Structure file (.ls)")

    enumerate_cmd = commands.add_parser("enumerate", parents=[common], help="List the sets with a property")
    enumerate_cmd.add_argument("file", help="Structure file (.ls)")
    enumerate_cmd.add_argument("--kind", required=True, choices=SET_TAGS)
    enumerate_cmd.add_argument("--alpha", type=int)
    enumerate_cmd.add_argument("--arrow")

    verify = commands.add_parser("verify", parents=[common], help="Check the theorem registry on one structure")
    verify.add_argument("file", help="Structure file (.ls)")
    verify.add_argument("--theorems", default="all", help="all or a comma-separated list such as T01,T22")
    verify.add_argument("--arrow")

    corpus = commands.add_parser("corpus", parents=[common], help="Check the theorem registry over a corpus")
    corpus.add_argument("--generator", default="mixed", choices=STRATEGIES)
    corpus.add_argument("--count", type=int, default=100)
    corpus.add_argument("--size-min", type=int, default=2)
    corpus.add_argument("--size-max", type=int)
    corpus.add_argument("--seed", type=int)
    corpus.add_argument("--theorems", default="all")
    corpus.add_argument("--exhaustive", type=int, metavar="N", help="Every table on N ≤ 2 elements instead")
    corpus.add_argument("--workers", type=int)
    corpus.add_argument("--inject-gallery", action="store_true", help=f"Also check {THREE_ELEMENT_ID}")
    corpus.add_argument("--no-minimize", action="store_true", help="Report counterexamples unshrunk")

    gallery = commands.add_parser("gallery", parents=[common], help="Separation examples")
    gallery_commands = gallery.add_subparsers(dest="gallery_command", required=True)
    gallery_commands.add_parser("list", parents=[common])
    run = gallery_commands.add_parser("run", parents=[common])
    run.add_argument("item", help="Item id, full or short (G6)")
    gallery_commands.add_parser("separations", parents=[common])

    bival = commands.add_parser("bival", parents=[common], help="Distinguished bivaluation sets")
    bival.add_argument("file", help="Structure file (.ls)")
    bival.add_argument("--emit", required=True, choices=KINDS)
    bival.add_argument("--compare", action="store_true", help="Compare ⊢ with the emitted set's relation")
    bival.add_argument("--probe", action="store_true", help="Check that no proper subset of SCS is adequate (TL-4 only)")

    return parser


def _structure(args: argparse.Namespace, report: ReportDocument) -> LogicalStructure:
    parsed, structure = load_structure(args.file)
    report.describe(structure)
    report.details["name"] = parsed.name
    logger.info(f"Loaded structure '{parsed.name}' from {args.file} (n={structure.n})")
    return structure


def _arrow(args: argparse.Namespace, structure: LogicalStructure, required: bool = False) -> Optional[ArrowTable]:
    if getattr(args, "arrow", None):
        return load_arrow(args.arrow)
    if required:
        raise ValueError("This property needs an arrow: pass --arrow FILE")
    return None


def cmd_check(args: argparse.Namespace, budget: Budget, report: ReportDocument) -> None:
    structure = _structure(args, report)
    tag = args.property
    if tag == BATENS:
        verdict = batens_condition(structure, _arrow(args, structure, required=True))
    elif tag in STRUCTURE_TAGS:
        prop = StructureProperty(tag, _arrow(args, structure, required=tag == MODUS_PONENS))
        verdict = check_structure(structure, prop, budget)
    else:
        if args.gamma is None:
            raise ValueError(f"Set property '{tag}' needs --gamma")
        if tag in ALPHA_TAGS and args.alpha is None:
            raise ValueError(f"Set property '{tag}' needs --alpha")
        gamma = parse_subset(args.gamma, structure.n)
        prop = SetProperty(tag, args.alpha, _arrow(args, structure, required=tag == ARROW_SATURATED))
        verdict = check_set(structure, prop, gamma, budget)
    label = f"{tag}(alpha={args.alpha})" if args.alpha is not None and tag in ALPHA_TAGS else tag
    report.add_verdict(label, verdict.holds, verdict.witness)
    report.passed = verdict.holds


def self_check(structure: LogicalStructure, verdicts: Dict[str, bool], budget: Budget) -> List[str]:
    """Characterization statements that disagree with the definitional verdicts"""
    problems = []
    for theorem, key in CHARACTERIZED.items():
        try:
            statements = all_statements(structure, theorem, budget)
        except BudgetExceededError as e:
            logger.debug(f"Skipping {theorem} characterization: {e}")
            continue
        for index, holds in statements.items():
            if holds != verdicts[key]:
                problems.append(f"{theorem} statement {index} is {holds}, {key} is {verdicts[key]}")
    return problems


def cmd_classify(args: argparse.Namespace, budget: Budget, report: ReportDocument) -> None:
    structure = _structure(args, report)
    result = classify(structure, budget)
    for key in VERDICT_KEYS:
        report.add_verdict(key, result[key], result.witnesses.get(key))
    problems = result.invariant_violations() + self_check(structure, result.verdicts, budget)
    report.details["self_check"] = problems or "consistent"
    report.passed = not problems
    for problem in problems:
        logger.error(f"❌ Classification self-check: {problem}")


def cmd_enumerate(args: argparse.Namespace, budget: Budget, report: ReportDocument) -> None:
    structure = _structure(args, report)
    if args.kind in ALPHA_TAGS and args.alpha is None:
        raise ValueError(f"Set property '{args.kind}' needs --alpha")
    prop = SetProperty(args.kind, args.alpha, _arrow(args, structure, required=args.kind == ARROW_SATURATED))
    sets = enumerate_sets(structure, prop, budget)
    report.details["kind"] = str(prop)
    report.details["count"] = len(sets)
    report.details["sets"] = [from_bits(gamma) for gamma in sets]


def _registry_verdicts(result: RegistryReport, report: ReportDocument) -> None:
    # a theorem skipped on any sample was not evaluated, so no verdict is recorded
    result.raise_for_skips()
    for theorem_id, count in result.counts.items():
        report.verdicts[theorem_id] = count.failures == 0
    for failure in result.failures:
        report.witnesses.append({"check": failure.theorem_id, **failure.to_dict()})
    report.details["registry"] = result.to_dict()
    report.passed = result.passed


def _minimize(args: argparse.Namespace, config: Dict[str, Any]) -> bool:
    return not getattr(args, "no_minimize", False) and bool(config["corpus"].get("minimize", True))


def cmd_verify(args: argparse.Namespace, budget: Budget, report: ReportDocument, config: Dict[str, Any]) -> None:
    structure = _structure(args, report)
    arrow = _arrow(args, structure) or ArrowTable.second_projection(structure.n)
    sample = Sample(0, "file", structure, arrow, label=report.details["name"])
    result = run_registry(
        [sample], parse_theorem_ids(args.theorems), minimize_failures=_minimize(args, config), budget=budget
    )
    _registry_verdicts(result, report)


def gallery_sample() -> Sample:
    structure = three_element_structure()
    return Sample(0, "gallery", structure, ArrowTable.second_projection(structure.n), label=THREE_ELEMENT_ID)


def cmd_corpus(args: argparse.Namespace, budget: Budget, report: ReportDocument, config: Dict[str, Any]) -> None:
    corpus_config = config["corpus"]
    if args.exhaustive is not None:
        corpus = exhaustive(args.exhaustive)
        report.details["corpus"] = {"exhaustive": args.exhaustive, "size": len(corpus)}
    else:
        seed = args.seed if args.seed is not None else int(corpus_config.get("default_seed", 42))
        corpus = GeneratorSpec(args.generator, seed, args.count, args.size_min, args.size_max)
        report.details["corpus"] = {
            "generator": corpus.strategy,
            "seed": corpus.seed,
            "count": corpus.count,
            "size_min": corpus.size_min,
            "size_max": corpus.size_max,
        }
    extra = [gallery_sample()] if args.inject_gallery else []
    workers = args.workers if args.workers is not None else int(corpus_config.get("workers", 1))
    result = run_registry(
        corpus,
        parse_theorem_ids(args.theorems),
        extra=extra,
        workers=workers,
        minimize_failures=_minimize(args, config),
        budget=budget,
    )
    _registry_verdicts(result, report)


def cmd_gallery(args: argparse.Namespace, report: ReportDocument, config: Dict[str, Any]) -> None:
    if args.gallery_command == "list":
        enabled = config["gallery"].get("enabled", {}) or {}
        items = []
        for item_id, cls in GALLERY.items():
            doc = cls(config).describe()
            doc["claims"] = len(doc["claims"])
            doc["enabled"] = bool(enabled.get(item_id, True))
            items.append(doc)
        report.details["items"] = items
        return

    if args.gallery_command == "run":
        try:
            result = run_claims(args.item, config)
        except KeyError as e:
            raise ValueError(e.args[0]) from e
        report.details["item"] = result.item_id
        for claim in result.results:
            report.add_verdict(
                claim.claim_id,
                claim.passed,
                {"expected": claim.expected, "observed": claim.observed, "error": claim.error},
            )
        report.details["claims"] = [r.to_dict() for r in result.results]
        report.details["classes"] = result.verdicts()
        report.passed = result.passed
        return

    reports = [item.run_claims() for item in initialize_gallery(config)]
    for item_report in reports:
        report.verdicts[item_report.item_id] = item_report.passed
    report.details["separations"] = separations(reports)
    report.passed = all(r.passed for r in reports)


def cmd_bival(args: argparse.Namespace, budget: Budget, report: ReportDocument, config: Dict[str, Any]) -> None:
    structure = _structure(args, report)
    named = extract(structure, args.emit, budget)
    report.details["valuations"] = named.to_dict()
    logger.info(f"{args.emit} has {len(named)} valuation(s)")
    if args.compare:
        comparison = compare(structure, named.base, allow_empty=True)
        report.add_verdict("sound", comparison.sound, comparison.sound_witness)
        report.add_verdict("complete", comparison.complete, comparison.complete_witness)
        report.add_verdict("adequate", comparison.adequate)
        report.passed = comparison.adequate
    if args.probe:
        bival_config = config["bival"]
        probe = minimality_probe(
            structure,
            samples=int(bival_config.get("minimality_samples", 16)),
            seed=int(bival_config.get("minimality_seed", 0)),
            budget=budget,
        )
        report.add_verdict("scs-minimal", probe.holds)
        report.details["minimality"] = probe.to_dict()
        report.passed = report.passed and probe.holds


def run_command(args: argparse.Namespace, config: Dict[str, Any], argv: List[str]) -> ReportDocument:
    """Dispatch one parsed command and time it"""
    budget = Budget.from_config(config)
    report = ReportDocument.start(argv, config["general"].get("timezone", "UTC"))
    start = time.perf_counter()
    if args.command == "check":
        cmd_check(args, budget, report)
    elif args.command == "classify":
        cmd_classify(args, budget, report)
    elif args.command == "enumerate":
        cmd_enumerate(args, budget, report)
    elif args.command == "verify":
        cmd_verify(args, budget, report, config)
    elif args.command == "corpus":
        cmd_corpus(args, budget, report, config)
    elif args.command == "gallery":
        cmd_gallery(args, report, config)
    elif args.command == "bival":
        cmd_bival(args, budget, report, config)
    report.timing["total_seconds"] = time.perf_counter() - start
    return report


def _set_log_level(args: argparse.Namespace, config: Dict[str, Any]) -> None:
    if args.verbose:
        log_level = "DEBUG"
    elif args.quiet:
        log_level = "WARNING"
    else:
        log_level = str(config["general"].get("log_level", "INFO")).upper()
    logging.getLogger().setLevel(getattr(logging, log_level, logging.INFO))
    logger.debug(f"Log level set to {log_level}")


def main(argv: Optional[List[str]] = None) -> int:
    """
    Main application entry point

    Returns:
        0 when every check passes, 1 when a counterexample or failed claim
        was found, 2 on usage, parse, budget and unexpected errors
    """
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        # argparse exits 0 for --help and 2 for usage errors
        return e.code if isinstance(e.code, int) else EXIT_ERROR

    try:
        config = load_config(args.config)
        _set_log_level(args, config)
        report = run_command(args, config, argv)
        print(report.to_json() if args.json else report.to_text())
        if not report.passed:
            logger.warning(f"❌ {args.command}: check failed")
            return EXIT_FAILURE
        return EXIT_OK

    except FileNotFoundError as e:
        logger.error(f"❌ File error: {e}")
        return EXIT_ERROR
    except ValueError as e:
        logger.error(f"❌ {type(e).__name__}: {e}")
        return EXIT_ERROR
    except Exception as e:
        logger.error(f"❌ Unexpected error: {e}", exc_info=True)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
