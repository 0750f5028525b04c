#!/usr/bin/env python3
"""
Command-line entry point for lrckit.
"""

import sys

from .cli import main


def cli_main() -> None:
    """Synchronous entry point for the ``lrckit`` console script."""
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        sys.exit(130)
    except Exception as e:
        print(f"Error: {e}", file=sys.stderr)
        sys.exit(1)


if __name__ == "__main__":
    cli_main()
