"""Report documents emitted by the CLI as JSON or text"""

import json
import logging
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Optional

from app.core import LogicalStructure
from app.utils.formatting import format_timestamp, format_verdict, format_witness

logger = logging.getLogger(__name__)

SCHEMA = "lsx-report/1"

# JSON Schema document published for SCHEMA
SCHEMA_FILE = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "schemas", "lsx-report-1.json")

# JSON key order; to_dict builds the mapping in exactly this order
FIELDS = ("schema", "command", "structure", "started_at", "passed", "verdicts", "witnesses", "details", "timing")


@dataclass
class ReportDocument:
    """
    The result of one CLI command

    verdicts maps a check name to its boolean outcome; witnesses lists the
    counterexample for every false verdict that has one. details carries the
    command-specific payload (claim lists, registry counts, enumerated sets).
    """

    command: List[str]
    structure: Optional[str] = None
    started_at: Optional[str] = None
    passed: bool = True
    verdicts: Dict[str, bool] = field(default_factory=dict)
    witnesses: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    timing: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def start(cls, command: List[str], tz_name: str = "UTC", now: Optional[datetime] = None) -> "ReportDocument":
        now = now or datetime.now(timezone.utc)
        return cls(command=list(command), started_at=format_timestamp(now, tz_name))

    def describe(self, structure: LogicalStructure) -> None:
        self.structure = structure.digest()

    def add_verdict(self, key: str, holds: bool, witness: Optional[Dict[str, Any]] = None) -> None:
        self.verdicts[key] = bool(holds)
        if not holds and witness:
            self.witnesses.append({"check": key, **witness})

    def to_dict(self) -> Dict[str, Any]:
        doc = {
            "schema": SCHEMA,
            "command": self.command,
            "structure": self.structure,
            "started_at": self.started_at,
            "passed": self.passed,
            "verdicts": self.verdicts,
            "witnesses": self.witnesses,
            "details": self.details,
            "timing": {key: round(value, 6) for key, value in self.timing.items()},
        }
        return {key: doc[key] for key in FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False, default=str)

    def to_text(self) -> str:
        """Human-readable rendering carrying the same verdicts as to_json()"""
        status = "✅ pass" if self.passed else "❌ fail"
        lines = [f"{' '.join(self.command)}: {status}"]
        if self.structure:
            lines.append(f"structure {self.structure}")
        if self.verdicts:
            lines.append("verdicts:")
            width = max(len(key) for key in self.verdicts)
            for key, value in self.verdicts.items():
                lines.append(f"  {key:<{width}}  {format_verdict(value)}")
        if self.witnesses:
            lines.append("witnesses:")
        for witness in self.witnesses:
            rest = {k: v for k, v in witness.items() if k != "check"}
            lines.append(f"  {witness.get('check')}: {format_witness(rest)}")
        for key, value in self.details.items():
            lines.extend(_detail_lines(key, value))
        if "total_seconds" in self.timing:
            lines.append(f"elapsed {self.timing['total_seconds']:.3f}s")
        return "\n".join(lines)


def _detail_lines(key: str, value: Any) -> List[str]:
    if isinstance(value, list):
        lines = [f"{key}:"]
        for item in value:
            lines.append(f"  {format_witness(item) if isinstance(item, dict) else item}")
        return lines
    if isinstance(value, dict):
        return [f"{key}: {format_witness(value)}"]
    return [f"{key}: {value}"]
