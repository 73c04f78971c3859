#!/usr/bin/env python3

"""
Albertson Verifier - Unified Entry Point
Exact, re-checkable evidence for cr(G) >= cr(K_r) when chi(G) >= r, 7 <= r <= 12.

Reports are JSON on stdout (or --out); progress and summaries go to stderr.
"""

import sys
import os
from typing import List, Optional

# Add the src directory to the Python path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from command_handler import EXIT_USAGE, CommandHandler  # noqa: E402
from config import Config  # noqa: E402
from logger import LOG, configure_logging  # noqa: E402


def run(argv: Optional[List[str]] = None, config_path: str = "config.json") -> int:
    """
    Load configuration and run one subcommand

    Returns:
        Process exit code
    """
    try:
        config = Config(config_path)
    except (ValueError, OSError) as e:
        LOG.error(f"Configuration error: {e}")
        return EXIT_USAGE
    configure_logging(config.log_level, config.log_file)
    return CommandHandler(config).run(argv)


def main():
    try:
        sys.exit(run(sys.argv[1:]))
    except KeyboardInterrupt:
        LOG.warning("Interrupted")
        sys.exit(130)


if __name__ == "__main__":
    main()
