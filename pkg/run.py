#!/usr/bin/env python3
"""
lpthreshold Runner Script
Starts the command line with logging configured; arguments pass straight through.
"""

import sys

from src.cli import main

if __name__ == "__main__":
    sys.exit(main())
