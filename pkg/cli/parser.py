# cli/parser.py
# argparse surface: global flags plus one subparser per command.

from __future__ import annotations

import argparse

from utils import __version__

COMMANDS = ("coefficients", "state", "spectrum", "measure", "transform", "validate")


def _add_potential(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", type=float, default=None, help="Well strength alpha (> -1/2)")
    p.add_argument("--beta", type=float, default=None, help="Step height beta (>= 0)")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=str, default=None, help="Output path (extension follows --format)")
    p.add_argument("--format", choices=("csv", "json"), default=None, help="Table format")


def _add_k_range(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k-min", type=float, default=None)
    p.add_argument("--k-max", type=float, default=None)
    p.add_argument("--n", type=int, default=None, help="Number of rows")


def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rmscat",
        description="Rosen-Morse scattering through generalized Legendre functions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  rmscat coefficients --alpha 2.5 --beta 1 --k-min 0.1 --k-max 8 --n 200
  rmscat state --alpha 0.7 --beta 1 --k 1.5 --x-min -20 --x-max 25
  rmscat spectrum --alpha 3.2 --beta 0.5 --format json
  rmscat --config my_settings.py validate --preset full
""",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", type=str, default=None, help="Settings file exporting SETTINGS")
    parser.add_argument("--show-config", action="store_true", help="Print the merged configuration and exit")
    parser.add_argument("--verbose", action="store_true", help="INFO-level console logging")
    parser.add_argument("--workers", type=int, default=None, help="Row-level threads (1 = serial)")

    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("coefficients", help="R, T and amplitude ratios over a k range")
    _add_potential(p)
    _add_k_range(p)
    _add_output(p)

    p = sub.add_parser("state", help="Sample one scattering state psi_k(x)")
    _add_potential(p)
    p.add_argument("--k", type=float, default=None)
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    p.add_argument("--n", type=int, default=None, help="Number of x samples")
    _add_output(p)

    p = sub.add_parser("spectrum", help="Closed-form bound spectrum")
    _add_potential(p)
    _add_output(p)

    p = sub.add_parser("measure", help="Spectral measure w(k) over a k range")
    _add_potential(p)
    _add_k_range(p)
    _add_output(p)

    p = sub.add_parser("transform", help="Gaussian packet round trip through the transform pair")
    _add_potential(p)
    p.add_argument("--k-center", type=float, default=None)
    p.add_argument("--k-width", type=float, default=None)
    p.add_argument("--n-k", type=int, default=None)
    p.add_argument("--x-min", type=float, default=None)
    p.add_argument("--x-max", type=float, default=None)
    _add_output(p)

    p = sub.add_parser("validate", help="Run the acceptance suite")
    p.add_argument("--preset", choices=("fast", "full"), default=None)
    p.add_argument("--seed", type=int, default=None, help="Seed of the random parameter draws")
    _add_output(p)

    return parser
