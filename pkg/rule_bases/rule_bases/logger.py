"""Rule Bases Logger initialisation"""

import logging
from logging.handlers import RotatingFileHandler
from pathlib import Path

from .constants import LOG_FILE_COUNT, LOG_FILE_MAX_BYTES, LOGGER_NAME

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s %(message)s"

bases_logger = logging.getLogger(LOGGER_NAME)
bases_logger.addHandler(logging.NullHandler())


def configure_logging(
    level: int | str = logging.WARNING,
    log_file: str | Path | None = None,
    file_count: int = LOG_FILE_COUNT,
) -> logging.Logger:
    """Attaches console (and optionally rotating file) handlers to the app logger.

    Only the command line calls this; library code just logs.

    Args:
        level (int | str, optional): Console threshold. Defaults to WARNING.
        log_file (str | Path | None, optional): Rotating log file. Defaults to None.
        file_count (int, optional): Rotated backups kept. Defaults to LOG_FILE_COUNT.

    Returns:
        logging.Logger: The configured app logger
    """
    formatter = logging.Formatter(LOG_FORMAT)

    for handler in list(bases_logger.handlers):
        if not isinstance(handler, logging.NullHandler):
            bases_logger.removeHandler(handler)
            handler.close()

    console = logging.StreamHandler()
    console.setLevel(level)
    console.setFormatter(formatter)
    bases_logger.addHandler(console)

    if log_file is not None:
        file_handler = RotatingFileHandler(
            log_file, maxBytes=LOG_FILE_MAX_BYTES, backupCount=file_count
        )
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(formatter)
        bases_logger.addHandler(file_handler)

    bases_logger.setLevel(logging.DEBUG)
    return bases_logger
