"""Text and JSON rendering of reports and classifications."""

import logging
from collections.abc import Sequence
from pathlib import Path

from jinja2 import Environment, PackageLoader, select_autoescape
from pydantic import BaseModel, TypeAdapter

from .models import ClassificationRecord, VerificationReport

# context keys short enough to print in the text table
SHOWN_CONTEXT = ("n", "k", "image", "in_source", "claim", "aspect", "t", "mutated", "family")


def _environment() -> Environment:
    return Environment(
        loader=PackageLoader("mpj_workbench", "templates"),
        autoescape=select_autoescape(["html", "xml"]),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def render_reports(reports: Sequence[VerificationReport], logger: logging.Logger) -> str:
    """Human-readable suite table."""
    failed = sum(r.verdict == "fail" for r in reports)
    logger.debug(f"rendering {len(reports)} reports, {failed} failed")
    template = _environment().get_template("report.txt.j2")
    return template.render(
        reports=reports,
        failed=failed,
        bounded=any(r.bounded for r in reports),
        shown_context=SHOWN_CONTEXT,
    )


def render_classification(record: ClassificationRecord) -> str:
    template = _environment().get_template("classification.txt.j2")
    return template.render(record=record, yes=_yes)


def reports_to_json(reports: Sequence[VerificationReport]) -> str:
    adapter = TypeAdapter(list[VerificationReport])
    return adapter.dump_json(list(reports), indent=2).decode() + "\n"


def reports_from_json(text: str) -> list[VerificationReport]:
    return TypeAdapter(list[VerificationReport]).validate_json(text)


def model_to_json(model: BaseModel) -> str:
    return model.model_dump_json(indent=2) + "\n"


def write_output(content: str, path: str | None, logger: logging.Logger) -> None:
    """Write to ``path``, or to stdout when it is None or ``-``."""
    if path is None or path == "-":
        print(content, end="")
        return
    try:
        Path(path).write_text(content, encoding="utf-8")
    except OSError as e:
        logger.error(f"could not write {path}: {e}", exc_info=True)
        raise
    logger.info(f"wrote {path}")
