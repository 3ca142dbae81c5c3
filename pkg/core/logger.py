import logging
from pathlib import Path
from typing import Optional

from rich.console import Console
from rich.logging import RichHandler

from config import settings


def setup_logger(name: str = "leslie", level: Optional[str] = None,
                 log_file: Optional[str] = None) -> logging.Logger:
    """Setup logger with a stderr console handler and an optional file handler."""
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, (level or settings.log_level).upper()))

    if logger.handlers:
        return logger

    # stdout carries reports and CSV
    console_handler = RichHandler(
        console=Console(stderr=True),
        show_path=False,
        rich_tracebacks=False
    )
    console_handler.setFormatter(logging.Formatter('%(name)s - %(message)s'))
    logger.addHandler(console_handler)

    log_file = log_file or settings.log_file
    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(path)
        file_handler.setFormatter(logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        ))
        logger.addHandler(file_handler)

    logger.propagate = False
    return logger


logger = setup_logger()
