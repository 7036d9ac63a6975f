# cli/__init__.py
# Command-line surface: argparse parser, run configuration, subcommands, validation suite.
