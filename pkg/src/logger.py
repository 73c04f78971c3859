# src/logger.py
from loguru import logger
import sys
from typing import Optional

# Unified log format string
log_format = "{time:YYYY-MM-DD HH:mm:ss} | {level} | {module}:{function}:{line} - {message}"

# stdout carries JSON reports, so every sink writes to stderr or a file
logger.remove()
logger.add(sys.stderr, level="INFO", format=log_format, colorize=False)


def configure_logging(level: str = "INFO", log_file: Optional[str] = None) -> None:
    """
    Re-install the log sinks.

    Args:
        level: Minimum level for the stderr sink
        log_file: Optional path for a rotating file sink (DEBUG and up)
    """
    logger.remove()
    logger.add(sys.stderr, level=level.upper(), format=log_format, colorize=False)
    if log_file:
        logger.add(log_file, rotation="1 MB", level="DEBUG", format=log_format)


# Alias for easy import
LOG = logger

# Make LOG available for import
__all__ = ["LOG", "configure_logging"]
