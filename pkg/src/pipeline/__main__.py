"""Allow ``python3 -m src.pipeline`` as the command-line entrypoint."""

from .cli import main

raise SystemExit(main())
