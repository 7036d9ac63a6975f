# main.py
# Project entry point: merge settings and flags, validate, dispatch one subcommand.

from __future__ import annotations

import json
import logging
from typing import List, Optional

from cli.commands import COMMAND_MAP
from cli.parser import create_parser
from cli.run_config import build_run_config, flag_overrides
from cli.validate import cmd_validate
from export.export_sink import TableSink
from numerics.errors import (
    ConfigError,
    DomainError,
    ParameterError,
    RMScatError,
    ThresholdError,
    ZeroMomentumError,
)
from utils.config import CONFIG, apply_overrides, load_config
from utils.dependencies import ensure_requirements
from utils.helpers import setup_signal_handlers
from utils.logger import get_log_filepath, get_logger, set_console_level

# Precondition failures: nothing was computed
_USAGE_ERRORS = (ConfigError, ParameterError, DomainError, ThresholdError, ZeroMomentumError)


# ====== MAIN ======
def main(argv: Optional[List[str]] = None) -> int:
    """Run one command; returns 0 on success, 1 on a failed computation or check, 2 on bad input."""
    logger = get_logger(__name__)
    parser = create_parser()
    args = parser.parse_args(argv)

    if args.verbose:
        set_console_level(logging.INFO)

    base = load_config(args.config) if args.config else CONFIG
    config = apply_overrides(base, flag_overrides(args))

    if args.show_config:
        print(json.dumps(config, indent=2, sort_keys=True))
        return 0
    if not args.command:
        parser.print_help()
        return 2

    # --- Optional dependency check ---
    if bool(config.get("system", {}).get("CHECK_DEPENDENCIES", False)):
        ensure_requirements()

    logger.info("Startup: command=%s", args.command)
    try:
        run = build_run_config(args.command, config, args.out)
    except _USAGE_ERRORS as e:
        logger.error("Invalid input: %s", e)
        return 2

    sink = TableSink(str(config["export"]["OUT_DIR"]), run.fmt, run.sig_digits)
    try:
        if args.command == "validate":
            setup_signal_handlers()
            paths, ok = cmd_validate(run, sink, config)
        else:
            paths, ok = COMMAND_MAP[args.command](run, sink, config), True
    except _USAGE_ERRORS as e:
        logger.error("Invalid input: %s", e)
        return 2
    except RMScatError as e:
        logger.error("%s failed: %s: %s", args.command, type(e).__name__, e)
        return 1

    for path in paths:
        print(path)
    log_path = get_log_filepath()
    if log_path:
        logger.info("Session log: %s", log_path)
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
