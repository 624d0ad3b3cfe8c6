"""Logging configuration for the Zinbiel toolkit.

Logs always go to stderr so that command output on stdout stays
byte-for-byte reproducible.
"""

import logging
import time
from contextlib import contextmanager
from typing import Any, Iterator, List, Optional

import structlog
from rich.console import Console
from rich.logging import RichHandler

from ..utils import format_time_duration


def setup_logging(
    log_level: str = "WARNING",
    debug: bool = False,
    json_logs: bool = False,
    console: Optional[Console] = None,
) -> None:
    """Set up logging configuration.

    Args:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        debug: Show source paths in log lines
        json_logs: Emit one JSON object per event instead of console lines
        console: Rich console to log to, stderr by default
    """
    logging.basicConfig(
        format="%(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(
                console=console or Console(stderr=True),
                rich_tracebacks=True,
                show_path=debug,
                show_time=not json_logs,
                markup=False,
            )
        ],
        level=getattr(logging, log_level.upper()),
        force=True,
    )

    processors: List[Any] = [
        structlog.stdlib.filter_by_level,
        structlog.contextvars.merge_contextvars,
        structlog.processors.add_log_level,
        structlog.processors.StackInfoRenderer(),
        structlog.dev.set_exc_info,
    ]

    if json_logs:
        processors.extend([
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.JSONRenderer(sort_keys=True),
        ])
    else:
        processors.append(structlog.dev.ConsoleRenderer(colors=debug))

    structlog.configure(
        processors=processors,
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def get_logger(name: str) -> structlog.stdlib.BoundLogger:
    """Get a structured logger instance.

    Args:
        name: Logger name, typically __name__

    Returns:
        Configured structlog logger instance
    """
    return structlog.get_logger(name)


def bind_run(command: str, **fields: Any) -> None:
    """Attach the running command and its options to every later event."""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, **fields)


@contextmanager
def log_duration(
    logger: structlog.stdlib.BoundLogger, event: str, **fields: Any
) -> Iterator[None]:
    """Log ``event`` with the elapsed wall time once the block finishes."""
    start = time.perf_counter()
    try:
        yield
    finally:
        elapsed = time.perf_counter() - start
        logger.debug(
            event, elapsed=format_time_duration(elapsed), seconds=round(elapsed, 4), **fields
        )
