import sys
from pathlib import Path
from typing import Optional, Union

from loguru import logger

from config import config


def configure_logging(level: Optional[str] = None, log_file: Optional[Union[str, Path]] = None) -> None:
    """Route loguru to stderr at `level` and to a rotating debug log file"""
    logger.remove()
    logger.add(sys.stderr, level=(level or config.LOG_LEVEL).upper(),
               format="<green>{time:HH:mm:ss}</green> | <level>{level: <8}</level> | "
                      "{extra[name]} - <level>{message}</level>")
    logger.add(log_file or config.LOG_FILE, rotation="1 day", retention="7 days", level="DEBUG",
               encoding="utf-8")
    logger.configure(extra={"name": "lpthreshold"})
