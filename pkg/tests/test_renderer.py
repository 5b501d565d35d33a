"""Tests for report and classification rendering."""

import logging
from unittest.mock import Mock

import pytest

from mpj_workbench.models import ClassificationRecord, Counterexample, VerificationReport
from mpj_workbench.renderer import (
    render_classification,
    render_reports,
    reports_from_json,
    reports_to_json,
    write_output,
)


@pytest.fixture
def mock_logger():
    """Mock logger for testing."""
    return Mock(spec=logging.Logger)


@pytest.fixture
def sample_reports():
    return [
        VerificationReport(check_id="costa", verdict="pass", instances_checked=6, elapsed=0.5),
        VerificationReport(
            check_id="sweep_reduction_mutated",
            verdict="fail",
            instances_checked=7,
            counterexample=Counterexample(
                word="ac",
                context={"kind": "reduction", "n": 2, "image": "ac", "table": [[1]]},
            ),
        ),
        VerificationReport(
            check_id="tddo_equality",
            verdict="pass",
            bounded=True,
            notes=["factor aa repeats a letter"],
        ),
    ]


class TestReports:
    """Test the text and JSON report forms."""

    def test_text_table(self, sample_reports, mock_logger):
        text = render_reports(sample_reports, mock_logger)
        assert text.startswith("Verification report (3 checks, 1 failed)")
        assert "counterexample: ac" in text
        assert "image: ac" in text
        assert "table" not in text
        assert "pass*" in text
        assert "note: factor aa repeats a letter" in text
        assert "bounded enumeration" in text
        mock_logger.debug.assert_called_once()

    def test_empty_counterexample_word(self, mock_logger):
        report = VerificationReport(
            check_id="variety_claims",
            verdict="fail",
            counterexample=Counterexample(word="", context={"claim": "J:universal"}),
        )
        text = render_reports([report], mock_logger)
        assert "counterexample: ε" in text
        assert "claim: J:universal" in text

    def test_json_round_trip(self, sample_reports):
        assert reports_from_json(reports_to_json(sample_reports)) == sample_reports


class TestClassification:
    """Test the classification summary."""

    def test_render(self):
        record = ClassificationRecord(
            source="ab-shuffle",
            alphabet=["a", "b"],
            minimal_states=3,
            monoid_size=5,
            omega=1,
            in_a=True,
            in_da=True,
            in_j=True,
            locally_j=True,
            stable_k=2,
            stable_monoid_size=5,
            quasi_a=True,
            quasi_da=True,
            quasi_j=True,
            piecewise={2: True, 1: False},
        )
        text = render_classification(record)
        assert text.startswith("ab-shuffle over {a,b}")
        assert "stable (k=2, size 5)" in text
        assert text.index("1-piecewise testable: no") < text.index("2-piecewise testable: yes")


class TestWriteOutput:
    """Test output destinations."""

    def test_stdout(self, capsys, mock_logger):
        write_output("hello\n", None, mock_logger)
        write_output("again\n", "-", mock_logger)
        assert capsys.readouterr().out == "hello\nagain\n"

    def test_file(self, tmp_path, mock_logger):
        path = tmp_path / "out.txt"
        write_output("hello\n", str(path), mock_logger)
        assert path.read_text() == "hello\n"
        mock_logger.info.assert_called_once()

    def test_unwritable(self, tmp_path, mock_logger):
        with pytest.raises(OSError):
            write_output("hello\n", str(tmp_path / "missing" / "out.txt"), mock_logger)
        mock_logger.error.assert_called_once()


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
