"""
Logging setup and utilities.
"""

import logging
import sys

from ..config.settings import Config

_LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def resolve_level(level: str | None) -> int:
    """Map a level name (error/warn/info/debug) to a logging level."""
    name = (level or Config.LOG_LEVEL).strip().lower()
    return _LEVELS.get(name, logging.WARNING)


def setup_logging(level: str | None = None) -> None:
    """Setup logging configuration.

    Logs go to stderr so the CLI can keep stdout line-oriented; a file
    handler is added when ``ARS548_TOOLKIT_LOG_FILE`` is set.
    """
    handlers: list[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if Config.LOG_FILE:
        handlers.append(logging.FileHandler(Config.LOG_FILE))

    # Configure logging
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=resolve_level(level),
        handlers=handlers,
        force=True,
    )

    # Set specific loggers
    logging.getLogger("asyncio").setLevel(logging.WARNING)
    logging.getLogger("uvicorn").setLevel(logging.WARNING)
    logging.getLogger("uvicorn.access").setLevel(logging.WARNING)
