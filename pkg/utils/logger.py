# utils/logger.py
# Session-wide logging: one shared log file plus a console handler for errors.

import logging
import os
from datetime import datetime
from threading import Lock
from typing import List, Optional

"""
Module: utils.logger
Short description:
    Logger factory for every module of rmscat. Records go to one file per
    process session (directory 'logs/' unless RMSCAT_LOG_DIR says otherwise;
    RMSCAT_LOG_DIR="" turns the file off) and to stderr from ERROR upward.
    Rows computed by parallel_map carry their worker thread name.

Responsibilities:
    - Build the session handlers lazily, once, under a lock.
    - Hand the same handlers to every module logger; no root propagation.
    - Let the CLI lower the console threshold for --verbose runs.
"""

LOG_DIR_ENV = "RMSCAT_LOG_DIR"
_FORMAT = "[%(asctime)s] %(threadName)s %(name)s: %(levelname)s - %(message)s"

_session_handlers: Optional[List[logging.Handler]] = None
_console: Optional[logging.Handler] = None
_log_path = ""

_INIT_LOCK = Lock()


def _open_session_file(formatter: logging.Formatter) -> Optional[logging.Handler]:
    global _log_path
    log_dir = os.environ.get(LOG_DIR_ENV, "logs")
    if not log_dir:
        return None
    os.makedirs(log_dir, exist_ok=True)
    stamp = datetime.now().strftime("%Y%m%d-%H%M%S")
    _log_path = os.path.join(log_dir, f"rmscat_{stamp}_{os.getpid()}.log")
    fh = logging.FileHandler(_log_path, mode="a", encoding="utf-8")
    fh.setFormatter(formatter)
    return fh


def _handlers() -> List[logging.Handler]:
    """Shared handlers of this session (file first when enabled, then stderr)."""
    global _session_handlers, _console
    if _session_handlers is not None:
        return _session_handlers

    with _INIT_LOCK:
        if _session_handlers is None:
            formatter = logging.Formatter(_FORMAT)
            _console = logging.StreamHandler()  # sys.stderr
            _console.setLevel(logging.ERROR)
            _console.setFormatter(formatter)
            fh = _open_session_file(formatter)
            _session_handlers = [h for h in (fh, _console) if h is not None]
    return _session_handlers


def get_logger(name: str) -> logging.Logger:
    """Module logger at INFO with the session handlers attached once."""
    logger = logging.getLogger(name)
    logger.setLevel(logging.INFO)
    logger.propagate = False
    if not logger.handlers:
        for h in _handlers():
            logger.addHandler(h)
    return logger


def set_console_level(level: int) -> None:
    """Console threshold; INFO for --verbose."""
    _handlers()
    if _console is not None:
        _console.setLevel(level)


def get_log_filepath() -> str:
    """Absolute path of the session log file, '' when file logging is off."""
    return os.path.abspath(_log_path) if _log_path else ""
