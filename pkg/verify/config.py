"""Runtime settings read from the environment (and a local .env file)."""
import os

from dotenv import load_dotenv

load_dotenv()

HARD_MAX_FACES = 8


def _int_setting(name: str, default: int, low: int = 0, high: int | None = None) -> int:
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < low or (high is not None and value > high):
        raise ValueError(f"{name}={value} outside {low}..{high if high is not None else 'inf'}")
    return value


QP_MAX_FACES = _int_setting("QP_MAX_FACES", 6, 1, HARD_MAX_FACES)
QP_DEFAULT_ORDER = _int_setting("QP_DEFAULT_ORDER", 20, 1, 64)
QP_DEFAULT_KMAX = _int_setting("QP_DEFAULT_KMAX", 12, 2, 32)
QP_DEFAULT_FACES = _int_setting("QP_DEFAULT_FACES", 5, 1, HARD_MAX_FACES)
QP_DEFAULT_SEED = _int_setting("QP_DEFAULT_SEED", 20240101)
QP_WORKERS = _int_setting("QP_WORKERS", 4, 1)
QP_LOG_LEVEL = os.getenv("QP_LOG_LEVEL", "INFO").upper()

# hard bounds on command-line parameters
MAX_ORDER = 64
MAX_KMAX = 32
