import json
import os

import jsonschema
import pytest

from app.core import Verdict
from app.main import EXIT_ERROR, EXIT_FAILURE, EXIT_OK, main
from app.propcheck.registry import Theorem, TheoremRegistry
from tests.test_report import load_schema, text_verdicts

STRUCTURES_DIR = os.path.join(os.path.dirname(__file__), "..", "structures")
G5 = os.path.join(STRUCTURES_DIR, "g5.ls")
ID3 = os.path.join(STRUCTURES_DIR, "id3.ls")
PROJ2 = os.path.join(STRUCTURES_DIR, "proj2.arrow")
SCHEMA_DOC = load_schema()


@pytest.fixture(autouse=True)
def no_budget_override(monkeypatch):
    monkeypatch.delenv("LSX_BUDGET", raising=False)


def run_json(capsys, *argv):
    code = main([*argv, "--json"])
    doc = json.loads(capsys.readouterr().out)
    jsonschema.validate(doc, SCHEMA_DOC)
    return code, doc


class TestClassify:
    def test_three_element(self, capsys):
        code, doc = run_json(capsys, "classify", G5)
        assert code == EXIT_OK
        assert doc["schema"] == "lsx-report/1"
        assert doc["verdicts"]["tarski"] is False
        assert doc["verdicts"]["lindIII"] is True
        assert doc["details"]["self_check"] == "consistent"
        assert any(w["check"] == "tarski" and w["axiom"] == "monotone" for w in doc["witnesses"])

    def test_global_flags_before_subcommand(self, capsys):
        assert main(["-q", "--json", "classify", ID3]) == EXIT_OK
        assert json.loads(capsys.readouterr().out)["verdicts"]["tl4"] is True

    def test_text_output(self, capsys):
        assert main(["classify", ID3]) == EXIT_OK
        out = capsys.readouterr().out
        assert "✅ pass" in out
        assert "tarski" in out

    @pytest.mark.parametrize(
        "argv",
        [
            ["classify", G5],
            ["check", G5, "--property", "monotone"],
            ["bival", G5, "--emit", "scs", "--compare"],
            ["gallery", "run", "G5"],
            ["verify", ID3, "--theorems", "T26,T27"],
        ],
    )
    def test_text_and_json_verdicts_agree(self, capsys, argv):
        json_code, doc = run_json(capsys, *argv)
        text_code = main(argv)
        assert text_code == json_code
        assert text_verdicts(capsys.readouterr().out) == doc["verdicts"]


class TestCheck:
    def test_false_verdict_exits_one(self, capsys):
        code, doc = run_json(capsys, "check", G5, "--property", "monotone")
        assert code == EXIT_FAILURE
        assert doc["verdicts"] == {"monotone": False}
        assert doc["witnesses"][0] == {"check": "monotone", "gamma": [], "sigma": [0], "alpha": 2}

    def test_set_property(self, capsys):
        code, doc = run_json(capsys, "check", G5, "--property", "maximal-nontrivial", "--gamma", "0,1")
        assert code == EXIT_OK
        assert doc["verdicts"] == {"maximal-nontrivial": True}

    def test_alpha_property_label(self, capsys):
        code, doc = run_json(
            capsys, "check", G5, "--property", "relatively-maximal", "--gamma", "0,1", "--alpha", "2"
        )
        assert code == EXIT_OK
        assert "relatively-maximal(alpha=2)" in doc["verdicts"]

    def test_batens_needs_arrow(self):
        assert main(["check", G5, "--property", "batens"]) == EXIT_ERROR

    def test_missing_gamma(self):
        assert main(["check", G5, "--property", "closed"]) == EXIT_ERROR

    def test_arrow_file(self, capsys, tmp_path):
        path = tmp_path / "id2.ls"
        path.write_text("structure id2\nelements 2\nmode rule\nrule identity\n")
        code, doc = run_json(capsys, "check", str(path), "--property", "modus-ponens", "--arrow", PROJ2)
        assert code in (EXIT_OK, EXIT_FAILURE)
        assert "modus-ponens" in doc["verdicts"]


class TestErrors:
    def test_parse_error(self, tmp_path):
        path = tmp_path / "bad.ls"
        path.write_text("structure bad\nelements 2\nmap {5} -> {}\n")
        assert main(["classify", str(path)]) == EXIT_ERROR

    def test_missing_file(self, tmp_path):
        assert main(["classify", str(tmp_path / "nope.ls")]) == EXIT_ERROR

    @pytest.mark.parametrize(
        "argv",
        [
            [],
            ["frobnicate"],
            ["check"],
            ["check", G5, "--property", "shiny"],
            ["corpus", "--count", "many"],
            ["-v", "-q", "classify", G5],
        ],
    )
    def test_usage_errors(self, argv):
        assert main(argv) == EXIT_ERROR

    def test_budget_exceeded(self):
        assert main(["corpus", "--exhaustive", "3"]) == EXIT_ERROR

    def test_verify_over_budget(self, tmp_path, capsys):
        path = tmp_path / "id9.ls"
        path.write_text("structure id9\nelements 9\nmode rule\nrule identity\n")
        assert main(["verify", str(path), "--theorems", "all", "--json"]) == EXIT_ERROR
        assert capsys.readouterr().out == ""

    def test_corpus_over_budget(self):
        argv = ["corpus", "--generator", "arbitrary", "--count", "2", "--size-min", "9", "--size-max", "9"]
        assert main(argv) == EXIT_ERROR

    def test_unknown_budget_key(self, monkeypatch):
        monkeypatch.setenv("LSX_BUDGET", "transitve=12")
        assert main(["classify", G5]) == EXIT_ERROR

    def test_missing_config(self, tmp_path):
        assert main(["--config", str(tmp_path / "none.yml"), "classify", G5]) == EXIT_ERROR


class TestEnumerate:
    def test_closed_sets(self, capsys):
        code, doc = run_json(capsys, "enumerate", G5, "--kind", "closed")
        assert code == EXIT_OK
        assert doc["details"]["sets"] == [[0, 1], [0, 1, 2]]
        assert doc["details"]["count"] == 2

    def test_alpha_kind_needs_alpha(self):
        assert main(["enumerate", G5, "--kind", "alpha-saturated"]) == EXIT_ERROR


class TestRegistryCommands:
    def test_verify(self, capsys):
        code, doc = run_json(capsys, "verify", ID3, "--theorems", "T26,T27,T31")
        assert code == EXIT_OK
        assert doc["verdicts"] == {"T26": True, "T27": True, "T31": True}
        assert doc["details"]["registry"]["samples"] == 1

    def test_exhaustive_corpus(self, capsys):
        code, doc = run_json(capsys, "corpus", "--exhaustive", "1", "--theorems", "T21,T23,T32")
        assert code == EXIT_OK
        assert doc["details"]["corpus"] == {"exhaustive": 1, "size": 3}

    def test_generated_corpus_with_gallery(self, capsys):
        code, doc = run_json(
            capsys, "corpus", "--count", "4", "--seed", "5", "--theorems", "T24,T26", "--inject-gallery"
        )
        assert code == EXIT_OK
        assert doc["details"]["registry"]["samples"] == 5
        assert doc["details"]["corpus"]["seed"] == 5

    def test_failing_theorem_exits_one(self, capsys, monkeypatch):
        failing = Theorem("X01", "always fails", lambda f: True, lambda f: Verdict.no(reason="planted"))
        monkeypatch.setattr(TheoremRegistry, "default", classmethod(lambda cls: cls([failing])))
        code, doc = run_json(capsys, "corpus", "--count", "2", "--no-minimize")
        assert code == EXIT_FAILURE
        assert doc["verdicts"] == {"X01": False}
        assert doc["witnesses"][0]["check"] == "X01"
        assert doc["witnesses"][0]["minimized"] is None


class TestGalleryCommands:
    def test_list(self, capsys):
        code, doc = run_json(capsys, "gallery", "list")
        assert code == EXIT_OK
        items = doc["details"]["items"]
        assert len(items) == 9
        assert all(isinstance(item["claims"], int) and item["enabled"] for item in items)

    def test_run_short_id(self, capsys):
        code, doc = run_json(capsys, "gallery", "run", "G6")
        assert code == EXIT_OK
        assert doc["details"]["item"] == "G6-omega-patched"
        assert all(doc["verdicts"].values())

    def test_run_unknown(self):
        assert main(["gallery", "run", "G42"]) == EXIT_ERROR

    def test_separations(self, capsys):
        code, doc = run_json(capsys, "gallery", "separations")
        assert code == EXIT_OK
        assert any(
            e["holds"] == "lindIII" and e["fails"] == "tarski" and "G5-three-elem" in e["witnesses"]
            for e in doc["details"]["separations"]
        )


class TestBival:
    def test_scs_is_adequate_for_identity(self, capsys):
        code, doc = run_json(capsys, "bival", ID3, "--emit", "scs", "--compare")
        assert code == EXIT_OK
        assert doc["verdicts"]["adequate"] is True

    def test_three_element_scs_is_not_adequate(self, capsys):
        code, doc = run_json(capsys, "bival", G5, "--emit", "scs", "--compare")
        assert code == EXIT_FAILURE
        assert doc["verdicts"]["adequate"] is False

    def test_minimality_probe(self, capsys):
        code, doc = run_json(capsys, "bival", ID3, "--emit", "scs", "--probe")
        assert code == EXIT_OK
        assert doc["verdicts"] == {"scs-minimal": True}
        assert len(doc["details"]["minimality"]["deletions"]) == 3

    def test_probe_needs_tl4(self):
        assert main(["bival", G5, "--emit", "scs", "--probe"]) == EXIT_ERROR

    def test_emit_only(self, capsys):
        code, doc = run_json(capsys, "bival", G5, "--emit", "relmax")
        assert code == EXIT_OK
        assert doc["verdicts"] == {}
