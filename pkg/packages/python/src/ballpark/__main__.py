"""Entry point for ``python -m ballpark``."""

import sys

from .cli import main

sys.exit(main())
