import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path


def setup_logging(config, verbose: bool = False):
    """Configure logging for the command line tool."""
    level = logging.DEBUG if verbose else getattr(logging, str(config.LOG_LEVEL).upper(), logging.WARNING)

    # stdout carries command payloads, so the console handler writes to stderr
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(logging.Formatter(
        '%(asctime)s %(levelname)s: %(message)s'
    ))
    console_handler.setLevel(level)

    root_logger = logging.getLogger()
    root_logger.setLevel(level)
    if root_logger.handlers:
        for handler in root_logger.handlers:
            handler.setLevel(level)
        return

    root_logger.addHandler(console_handler)

    if config.LOG_TO_FILE:
        log_dir = Path(config.LOG_DIR)
        log_dir.mkdir(exist_ok=True)

        file_handler = RotatingFileHandler(
            log_dir / config.LOG_FILE,
            maxBytes=10485760,
            backupCount=10
        )
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'
        ))
        file_handler.setLevel(logging.INFO)
        root_logger.addHandler(file_handler)

    logging.getLogger('varlattice').info('varlattice startup')
