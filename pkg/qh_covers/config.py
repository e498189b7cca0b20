# Runtime settings read from the environment. Command line flags override them.

from __future__ import annotations

import logging
import os
from dataclasses import dataclass, replace

from .Core.exceptions import InvalidInputError

logger = logging.getLogger(__name__)

DEFAULT_CAP = 8
DEFAULT_MAX_TABLE_BYTES = 2 * 1024 ** 3
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise InvalidInputError(f"{name}={raw!r} is not an integer") from None
    if value < minimum:
        raise InvalidInputError(f"{name} must be at least {minimum}, got {value}")
    return value


@dataclass(frozen=True)
class Settings:
    """Execution settings.

    Attributes:
        workers (int): worker threads for fixture suites and per-weight fan-out (QHC_WORKERS).
        cap (int): default degree cap for dimension computations (QHC_CAP).
        log_level (str | None): logging level name (QHC_LOG_LEVEL); None leaves it to -v flags.
        max_table_bytes (int): largest structure constant table a fixture may
            allocate; larger rows run on the tensor space side over fields and
            are skipped otherwise (QHC_MAX_TABLE_BYTES).
    """

    workers: int = 1
    cap: int = DEFAULT_CAP
    log_level: str | None = None
    max_table_bytes: int = DEFAULT_MAX_TABLE_BYTES

    @classmethod
    def from_env(cls) -> Settings:
        level = os.environ.get("QHC_LOG_LEVEL")
        if level is not None:
            level = level.strip().upper() or None
            if level is not None and level not in LOG_LEVELS:
                raise InvalidInputError(f"QHC_LOG_LEVEL must be one of {LOG_LEVELS}, got {level!r}")
        return cls(
            workers=_int_from_env("QHC_WORKERS", min(4, os.cpu_count() or 1), 1),
            cap=_int_from_env("QHC_CAP", DEFAULT_CAP, 2),
            log_level=level,
            max_table_bytes=_int_from_env("QHC_MAX_TABLE_BYTES", DEFAULT_MAX_TABLE_BYTES, 1),
        )

    def override(self, **changes: object) -> Settings:
        """A copy with the given fields replaced; None values are ignored."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})  # type: ignore[arg-type]


def configure_logging(settings: Settings, verbosity: int = 0) -> None:
    """Root logging at WARNING, INFO with -v, DEBUG with -vv; QHC_LOG_LEVEL wins when set."""
    if settings.log_level is not None:
        level = getattr(logging, settings.log_level)
    else:
        level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbosity, 2)]
    logging.basicConfig(level=level, format="%(name)s:%(levelname)s:%(message)s", force=True)
    logger.debug("logging configured at %s", logging.getLevelName(level))
