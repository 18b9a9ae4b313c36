"""Provides functions to create loggers."""

import logging
import sys
from typing import Text

FORMAT = "%(asctime)s — %(name)s — %(levelname)s — %(message)s"


def get_console_handler() -> logging.StreamHandler:
    """
    Get console handler.

    Returns:
        logging.StreamHandler which logs into stderr, leaving stdout to command results
    """
    console_handler = logging.StreamHandler(sys.stderr)
    formatter = logging.Formatter(FORMAT)
    console_handler.setFormatter(formatter)

    return console_handler


def get_file_handler(path: Text) -> logging.FileHandler:
    """
    Get file handler.

    Args:
        path {Text}: log file path

    Returns:
        logging.FileHandler which appends to the given file
    """
    formatter = logging.Formatter(FORMAT)
    file_handler = logging.FileHandler(path)
    file_handler.setFormatter(formatter)

    return file_handler


def get_logger(
    name: Text = __name__, log_level: Text | int = logging.DEBUG, log_file: Text | None = None
) -> logging.Logger:
    """
    Get logger.

    Args:
        name {Text}: logger name
        log_level {Text or int}: logging level; can be string name or integer value
        log_file {Text or None}: optional file to mirror the console output into
    Returns:
        logging.Logger instance
    """
    logger = logging.getLogger(name)
    logger.setLevel(log_level)

    # Prevent duplicate outputs when a module is re-imported
    if logger.hasHandlers():
        logger.handlers.clear()

    logger.addHandler(get_console_handler())
    if log_file:
        logger.addHandler(get_file_handler(log_file))
    logger.propagate = False

    return logger
