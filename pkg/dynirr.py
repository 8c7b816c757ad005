#!/usr/bin/env python3
"""
dynirr command-line entry point.
"""

import sys
from pathlib import Path

# Add src to path
sys.path.insert(0, str(Path(__file__).parent / 'src'))

from dynirr.cli import main  # noqa: E402

if __name__ == '__main__':
    sys.exit(main())
