import json
from datetime import datetime, timezone

import jsonschema
import pytest

from app.gallery.three_element import three_element_structure
from app.report import FIELDS, SCHEMA, SCHEMA_FILE, ReportDocument

NOW = datetime(2024, 1, 18, 19, 15, tzinfo=timezone.utc)


def load_schema():
    with open(SCHEMA_FILE, "r") as f:
        return json.load(f)


def text_verdicts(text):
    """The verdict block of a text report as a dict"""
    verdicts = {}
    lines = text.splitlines()
    if "verdicts:" not in lines:
        return verdicts
    for line in lines[lines.index("verdicts:") + 1 :]:
        if not line.startswith("  "):
            break
        key, value = line.strip().rsplit(maxsplit=1)
        assert value in ("yes", "no"), line
        verdicts[key] = value == "yes"
    return verdicts


def sample_report():
    report = ReportDocument.start(["classify", "g5.ls"], "UTC", NOW)
    report.describe(three_element_structure())
    report.add_verdict("reflexive", True)
    report.add_verdict("monotone", False, {"gamma": [], "sigma": [0], "alpha": 2})
    report.details["self_check"] = "consistent"
    report.timing["total_seconds"] = 0.0123456789
    return report


class TestReportDocument:
    def test_field_order(self):
        doc = sample_report().to_dict()
        assert tuple(doc) == FIELDS
        assert doc["schema"] == SCHEMA == "lsx-report/1"

    def test_started_at_in_configured_zone(self):
        report = ReportDocument.start(["gallery", "list"], "America/New_York", NOW)
        assert report.started_at == "2024-01-18T14:15:00-05:00"

    def test_witness_only_for_false_verdicts(self):
        report = sample_report()
        report.add_verdict("cut", True, {"gamma": [0]})
        assert report.witnesses == [{"check": "monotone", "gamma": [], "sigma": [0], "alpha": 2}]

    def test_structure_digest(self):
        assert sample_report().structure.startswith("sha256:")

    def test_timing_is_rounded(self):
        assert sample_report().to_dict()["timing"]["total_seconds"] == 0.012346

    def test_json_and_text_carry_same_verdicts(self):
        report = sample_report()
        doc = json.loads(report.to_json())
        text = report.to_text()
        assert doc["verdicts"] == {"reflexive": True, "monotone": False}
        assert text_verdicts(text) == doc["verdicts"]
        assert "reflexive  yes" in text
        assert "monotone   no" in text
        assert "  monotone: " in text.split("witnesses:")[1]
        assert "self_check: consistent" in text

    def test_text_status_line(self):
        report = sample_report()
        assert report.to_text().splitlines()[0].startswith("classify g5.ls: ✅ pass")
        report.passed = False
        assert "❌ fail" in report.to_text().splitlines()[0]

    def test_list_details(self):
        report = ReportDocument(["enumerate"])
        report.details["sets"] = [[0, 1], [2]]
        assert "sets:" in report.to_text()
        assert report.to_dict()["started_at"] is None

    def test_keys_with_spaces_and_no_verdicts(self):
        report = ReportDocument(["gallery", "run", "G5"])
        assert text_verdicts(report.to_text()) == {}
        report.add_verdict("G5 lim pair", False)
        report.add_verdict("T01", True)
        assert text_verdicts(report.to_text()) == report.to_dict()["verdicts"]


class TestSchema:
    def test_schema_file_matches_fields(self):
        schema = load_schema()
        jsonschema.Draft202012Validator.check_schema(schema)
        assert tuple(schema["required"]) == FIELDS
        assert schema["properties"]["schema"]["const"] == SCHEMA

    def test_report_validates(self):
        jsonschema.validate(json.loads(sample_report().to_json()), load_schema())

    def test_empty_report_validates(self):
        jsonschema.validate(ReportDocument(["gallery", "list"]).to_dict(), load_schema())

    @pytest.mark.parametrize(
        "field, value",
        [
            ("schema", "lsx-report/2"),
            ("passed", "yes"),
            ("verdicts", {"tarski": 1}),
            ("witnesses", [{"gamma": []}]),
            ("structure", "md5:abc"),
        ],
    )
    def test_rejects_malformed(self, field, value):
        doc = sample_report().to_dict()
        doc[field] = value
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate(doc, load_schema())
