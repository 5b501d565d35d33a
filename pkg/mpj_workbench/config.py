"""Configuration management for the application."""

import os

from dotenv import load_dotenv

from .errors import ConfigurationError


def load_config():
    """Load environment variables from .env file."""
    load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{name} must be an integer, got {raw!r}") from None


def get_state_cap() -> int:
    """Get the DFA state cap for compilation and product constructions."""
    return _int_env("MPJ_STATE_CAP", 100000)


def get_monoid_cap() -> int:
    """Get the element cap for transition and syntactic monoids."""
    return _int_env("MPJ_MONOID_CAP", 5000)


def get_quotient_cap() -> int:
    """Get the element cap for ~k quotient monoids."""
    return _int_env("MPJ_QUOTIENT_CAP", 5000)


def get_enumeration_bound() -> int:
    """Get the word length used when exact checks fall back to enumeration."""
    return _int_env("MPJ_ENUMERATION_BOUND", 10)


def get_seed() -> int:
    """Get the seed for random programs and selector functions."""
    return _int_env("MPJ_SEED", 0)


def get_parallelism() -> int:
    """Get the number of worker processes used by the verification suite."""
    return _int_env("MPJ_PARALLELISM", 1)


def get_output_format() -> str:
    """Get the default CLI output format (text or json)."""
    return os.getenv("MPJ_OUTPUT_FORMAT", "text").lower()


def get_tddo_block_cap() -> int:
    """Get the max number of decorated blocks compile_tddo may expand."""
    return _int_env("MPJ_TDDO_BLOCK_CAP", 512)


def get_log_level() -> str:
    """Get log level from environment."""
    return os.getenv("LOG_LEVEL", "INFO").upper()


def get_log_format() -> str:
    """Get log format from environment."""
    return os.getenv(
        "LOG_FORMAT", "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
