# settings.py
"""
Runtime configuration for the gbent toolkit.
Config via .env or environment variables:
  GBENT_THREADS           worker processes for search / verify (default 1)
  GBENT_LOG_LEVEL         logging level name (default INFO)
  GBENT_CHUNK_SIZE        candidates per search chunk (default 4096)
  GBENT_EXHAUSTIVE_LIMIT  largest k*2^n accepted by exhaustive mode (default 20)
  GBENT_NAIVE_MAX_N       largest n accepted by the quadratic oracle (default 14)
  GBENT_PROGRESS          show progress bars, 0 or 1 (default 1)
"""

import os
import sys
import logging

from dotenv import load_dotenv

load_dotenv()


def _int_env(name, default):
    raw = os.getenv(name, str(default)).strip()
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"{name} must be an integer, got {raw!r}")


GBENT_THREADS = max(1, _int_env("GBENT_THREADS", 1))
GBENT_LOG_LEVEL = os.getenv("GBENT_LOG_LEVEL", "INFO").upper()
GBENT_CHUNK_SIZE = max(1, _int_env("GBENT_CHUNK_SIZE", 4096))
GBENT_EXHAUSTIVE_LIMIT = _int_env("GBENT_EXHAUSTIVE_LIMIT", 20)
GBENT_NAIVE_MAX_N = _int_env("GBENT_NAIVE_MAX_N", 14)
GBENT_PROGRESS = os.getenv("GBENT_PROGRESS", "1") in ("1", "true", "True")

MAX_N = 24
MAX_K = 6


LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


def setup_logging(level=None):
    """Configure root logging on stderr; stdout is reserved for JSON."""
    level = (level or GBENT_LOG_LEVEL).upper()
    if level not in LOG_LEVELS:
        raise SystemExit(f"log level must be one of {', '.join(LOG_LEVELS)}, got {level!r}")
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )


def progress_enabled():
    return GBENT_PROGRESS and sys.stderr.isatty()
