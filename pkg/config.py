import os

from dotenv import load_dotenv

load_dotenv()


DEFAULT_MAX_POINTS = 24
DEFAULT_RENDER_MAX_POINTS = 24
DEFAULT_SEED = 1729


class LimitExceeded(ValueError):
    """A request exceeded a configured size limit."""


def _int_env(name, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def get_max_points():
    """Largest b+t accepted by diagram enumeration."""
    return _int_env("TLGRADED_MAX_POINTS", DEFAULT_MAX_POINTS)


def get_render_max_points():
    return _int_env("TLGRADED_RENDER_MAX_POINTS", DEFAULT_RENDER_MAX_POINTS)


def get_default_seed():
    return _int_env("TLGRADED_SEED", DEFAULT_SEED)


def get_log_level():
    return os.getenv("LOG_LEVEL", "WARNING").upper()
