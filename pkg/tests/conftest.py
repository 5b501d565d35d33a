"""Shared fixtures."""

import os

import pytest


@pytest.fixture(autouse=True)
def restore_environment():
    """The CLI publishes its caps into os.environ; undo that after each test."""
    saved = dict(os.environ)
    yield
    os.environ.clear()
    os.environ.update(saved)
