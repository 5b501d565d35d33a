"""Logging configuration for the application."""

import logging

from .config import get_log_format, get_log_level

PACKAGE_LOGGER = "mpj_workbench"


def setup_logging(level: str | None = None) -> logging.Logger:
    """Configure logging from LOG_LEVEL / LOG_FORMAT unless ``level`` is given."""
    log_level = (level or get_log_level()).upper()

    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        format=get_log_format(),
        handlers=[logging.StreamHandler()],
    )

    # asyncio is chatty at DEBUG
    logging.getLogger("asyncio").setLevel(logging.WARNING)

    return logging.getLogger(PACKAGE_LOGGER)


def configure_worker_logging() -> None:
    """Process-pool initializer; spawned workers start with no handlers."""
    if not logging.getLogger().handlers:
        setup_logging()
