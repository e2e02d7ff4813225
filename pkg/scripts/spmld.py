#!/usr/bin/env python3
"""Run the spmld command line from a source checkout."""

import sys
from pathlib import Path

# Add project root to path
PROJECT_ROOT = Path(__file__).parent.parent
sys.path.insert(0, str(PROJECT_ROOT))


def main():
    """Load .env and hand over to the CLI."""
    from dotenv import load_dotenv
    load_dotenv(PROJECT_ROOT / ".env")

    from src.cli.main import main as cli_main

    sys.exit(cli_main())


if __name__ == "__main__":
    main()
