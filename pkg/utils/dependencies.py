# utils/dependencies.py
# Verification of the packages listed in requirements.txt and their installed versions.

from __future__ import annotations

import importlib
import subprocess
import sys
from importlib import metadata
from pathlib import Path
from typing import Dict, List

from utils.logger import get_logger

logger = get_logger(__name__)

_REQ_FILE = Path(__file__).resolve().parents[1] / "requirements.txt"


def read_requirements() -> List[str]:
    """Non-empty, non-comment lines of requirements.txt; exits 1 when the file is missing."""
    if not _REQ_FILE.exists():
        logger.error('Error: "requirements.txt" not found.')
        raise SystemExit(1)
    with _REQ_FILE.open(encoding="utf-8") as f:
        return [line.strip() for line in f if line.strip() and not line.lstrip().startswith("#")]


def _package_name(spec: str) -> str:
    for sep in ("==", ">=", "<=", "~=", ">", "<"):
        spec = spec.split(sep)[0]
    return spec.strip()


def missing_requirements() -> List[str]:
    """Requirement specs whose module cannot be imported."""
    missing: List[str] = []
    for spec in read_requirements():
        try:
            importlib.import_module(_package_name(spec))
        except ImportError:
            missing.append(spec)
    return missing


def ensure_requirements(install: bool = False) -> None:
    """Report (and optionally pip-install) missing packages.

    Behavior:
        - Without `install`, missing packages are logged and SystemExit(1) is raised.
        - With `install`, each missing spec is installed with pip, as listed.
    """
    logger.info("Checking dependencies...")
    missing = missing_requirements()
    if not missing:
        logger.info("All dependencies were already installed.")
        return

    if not install:
        logger.error("Missing packages: %s", ", ".join(missing))
        raise SystemExit(1)

    for spec in missing:
        logger.info("'%s' not found: installing ...", spec)
        try:
            subprocess.check_call([sys.executable, "-m", "pip", "install", "--disable-pip-version-check", spec])
        except subprocess.CalledProcessError as e:
            logger.error("Installation failed for '%s': %s", spec, e)
            raise
    logger.info("Installed during check: %s", ", ".join(missing))


def package_versions() -> Dict[str, str]:
    """Installed version per requirement ('missing' when absent)."""
    out: Dict[str, str] = {}
    for spec in read_requirements():
        name = _package_name(spec)
        try:
            out[name] = metadata.version(name)
        except metadata.PackageNotFoundError:
            out[name] = "missing"
    return out
