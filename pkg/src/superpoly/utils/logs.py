import logging
import os
import sys

ENV_VAR = "SUPERPOLY_LOG"
LEVELS: dict[str, int] = {
    "quiet": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}
_FORMAT = "%(levelname)s %(name)s: %(message)s"


def log_level(value: str | None = None) -> int:
    """Level named by ``value`` (or $SUPERPOLY_LOG); anything unknown is quiet."""
    if value is None:
        value = os.environ.get(ENV_VAR, "")
    return LEVELS.get(value.strip().lower(), logging.WARNING)


def configure_logging(value: str | None = None) -> None:
    """Send superpoly's log records to stderr; stdout stays machine-readable."""
    logger = logging.getLogger("superpoly")
    for handler in list(logger.handlers):
        if getattr(handler, "_superpoly", False):
            logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT))
    handler._superpoly = True  # type: ignore[attr-defined]
    logger.addHandler(handler)
    logger.setLevel(log_level(value))
    logger.propagate = False
