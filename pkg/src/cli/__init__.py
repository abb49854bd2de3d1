"""
Command-line front end: argparse subcommands, CSV tables and SVG figures.
"""

from .main import build_parser, main

__all__ = ["build_parser", "main"]
