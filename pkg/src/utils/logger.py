"""
Logging configuration
"""
import logging
import sys
from typing import Optional

from pythonjsonlogger import jsonlogger

from src.config import settings


def setup_logging(level: Optional[str] = None):
    """Configure application logging.

    Diagnostics go to standard error; standard output carries the JSON
    results of the command line.
    """
    fmt = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

    # Create formatter
    if settings.LOG_FORMAT.lower() == "json":
        formatter = jsonlogger.JsonFormatter(fmt)
    else:
        formatter = logging.Formatter(fmt, datefmt='%Y-%m-%d %H:%M:%S')

    # Configure root logger
    root_logger = logging.getLogger()
    root_logger.setLevel(getattr(logging, (level or settings.LOG_LEVEL).upper()))

    # Repeated calls replace the handler instead of stacking another one
    for handler in list(root_logger.handlers):
        if getattr(handler, "_mcl_handler", False):
            root_logger.removeHandler(handler)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    console_handler._mcl_handler = True
    root_logger.addHandler(console_handler)

    logging.getLogger(__name__).debug("Logging configured")
