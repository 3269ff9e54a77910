# utils/logger.py

import logging
import os
import sys

from pythonjsonlogger.json import JsonFormatter

import config

PLAIN_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
JSON_FORMAT = '%(asctime)s %(name)s %(levelname)s %(message)s'


def _formatter():
    if config.LOG_FORMAT == "json":
        return JsonFormatter(JSON_FORMAT)
    return logging.Formatter(PLAIN_FORMAT)


def setup_logger(name, log_file):
    """Module logger writing to LOG_DIR/<log_file>; idempotent per name."""
    log_path = os.path.join(config.LOG_DIR, log_file)
    os.makedirs(os.path.dirname(log_path), exist_ok=True)

    logger = logging.getLogger(f"khg.{name}")
    logger.setLevel(config.LOG_LEVEL)

    if not logger.handlers:
        fh = logging.FileHandler(log_path)
        fh.setLevel(config.LOG_LEVEL)
        fh.setFormatter(_formatter())
        logger.addHandler(fh)

    return logger


def enable_stderr_logging(level="INFO"):
    """Mirror every khg.* logger to stderr (CLI --verbose)."""
    root = logging.getLogger("khg")
    root.setLevel(level)
    for handler in root.handlers:
        if getattr(handler, "_khg_stderr", False):
            return handler
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level)
    handler.setFormatter(_formatter())
    handler._khg_stderr = True
    root.addHandler(handler)
    return handler
