# FILE: switchcert/config/logging_config.py

"""
Process-wide logging: a rotating 'app.log' plus a stderr console handler.
Console output goes to stderr so that report text and `--json` output on
stdout stay machine-readable.
"""

import os
import logging
from logging.handlers import RotatingFileHandler
from typing import Optional

LOG_FILE_NAME = "app.log"
LOG_FORMAT = "%(asctime)s - %(levelname)s - %(filename)s - %(message)s"
MAX_LOG_BYTES = 5 * 1024 * 1024
LOG_BACKUPS = 3


def setup_logging(
        root_level: int = logging.DEBUG,
        file_level: int = logging.DEBUG,
        console_level: int = logging.INFO,
        enable_file_logging: bool = True,
        enable_console_logging: bool = True,
        log_directory: Optional[str] = None,
        ) -> Optional[str]:
    """Configure root, file, and console logging.

    Python warnings (numpy overflow, scipy integration notices) are routed
    through the `py.warnings` logger so they land in the same file.

    Args:
        root_level (int): Logging level for the root logger.
        file_level (int): Level of the rotating file handler.
        console_level (int): Level of the stderr handler.
        enable_file_logging (bool): Whether to write '<log_directory>/app.log'.
        enable_console_logging (bool): Whether to log to stderr.
        log_directory (str, optional): Defaults to './logs'.

    Returns:
        Optional[str]: Path of the log file, or None when file logging is off
        or the directory cannot be created.
    """
    log_directory = log_directory or os.path.join(os.getcwd(), "logs")
    log_file = os.path.join(log_directory, LOG_FILE_NAME)

    if enable_file_logging:
        try:
            os.makedirs(log_directory, exist_ok=True)
        except OSError as e:
            logging.debug(f"[setup_logging] Cannot create log directory {log_directory}: {e}")
            enable_file_logging = False

    root = logging.getLogger()
    for handler in list(root.handlers):
        if isinstance(handler, (RotatingFileHandler, logging.StreamHandler)) and getattr(handler, "_switchcert", False):
            root.removeHandler(handler)
            handler.close()
    root.setLevel(root_level)
    formatter = logging.Formatter(LOG_FORMAT)

    if enable_file_logging:
        file_handler = RotatingFileHandler(log_file, maxBytes=MAX_LOG_BYTES, backupCount=LOG_BACKUPS)
        file_handler.setLevel(file_level)
        file_handler.setFormatter(formatter)
        file_handler._switchcert = True
        root.addHandler(file_handler)

    if enable_console_logging:
        console_handler = logging.StreamHandler()
        console_handler.setLevel(console_level)
        console_handler.setFormatter(formatter)
        console_handler._switchcert = True
        root.addHandler(console_handler)

    logging.captureWarnings(True)
    return log_file if enable_file_logging else None
