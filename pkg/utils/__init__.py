# utils/__init__.py
# Shared runtime utilities: logging, configuration, helpers, dependency report.

__version__ = "0.1.0"
