"""Logging configuration for ssm2d.

Records carry kernel context (grid extents, mode, field, group, direction,
phase) as extras; the formatter renders whichever are set after the message.
"""

import logging
import sys
from typing import Any

# Rendered in this order after the message
CONTEXT_FIELDS = ("grid", "mode", "field", "group", "direction", "phase")


class Ssm2dLogFormatter(logging.Formatter):
    """Structured log formatter for ssm2d."""

    def __init__(self, include_timestamp: bool = True):
        fmt = "[%(levelname)s] %(name)s: %(message)s"
        if include_timestamp:
            fmt = "%(asctime)s " + fmt
        super().__init__(fmt, datefmt="%Y-%m-%d %H:%M:%S")

    def format(self, record: logging.LogRecord) -> str:
        message = super().format(record)
        context = [
            f"{key}={getattr(record, key)}"
            for key in CONTEXT_FIELDS
            if getattr(record, key, None) is not None
        ]
        if context:
            message += f" [{', '.join(context)}]"
        return message


class Ssm2dLogger(logging.LoggerAdapter):
    """Logger adapter that attaches kernel context to every record."""

    def __init__(self, logger: logging.Logger, **context: Any):
        super().__init__(logger, context)

    def process(self, msg: str, kwargs: dict[str, Any]) -> tuple[str, dict]:
        # per-call extras override the adapter's context
        kwargs["extra"] = {**self.extra, **kwargs.get("extra", {})}
        return msg, kwargs

    def with_context(self, **context: Any) -> "Ssm2dLogger":
        """New adapter on the same logger with `context` merged over this one's."""
        return Ssm2dLogger(self.logger, **{**self.extra, **context})


def setup_logging(
    level: int | str = logging.INFO,
    format_timestamps: bool = True,
    handler: logging.Handler | None = None,
) -> None:
    """Configure the "ssm2d" logger tree.

    Args:
        level: Log level (DEBUG, INFO, WARNING, ERROR)
        format_timestamps: Whether to include timestamps
        handler: Custom log handler (uses stderr if None)
    """
    root = logging.getLogger("ssm2d")
    root.setLevel(level)
    root.handlers.clear()

    if handler is None:
        handler = logging.StreamHandler(sys.stderr)
        handler.setLevel(level)

    handler.setFormatter(Ssm2dLogFormatter(include_timestamp=format_timestamps))
    root.addHandler(handler)


def get_logger(name: str, **context: Any) -> Ssm2dLogger:
    """Adapter for an ssm2d component, e.g. get_logger(__name__, grid="32x32")."""
    return Ssm2dLogger(logging.getLogger(name), **context)
