"""Console entry point for the ``zonocube`` command."""
from __future__ import annotations

import logging
import sys

if __package__ in (None, ""):
    # Allow running this module as a script (python path fix)
    from pathlib import Path

    sys.path.append(str(Path(__file__).resolve().parents[1]))
    __package__ = "zonocube"

from .cli import check_main, main
from .config import load_settings


logger = logging.getLogger(__name__)


def _configure_logging() -> None:
    settings = load_settings()
    level = settings.log_level.upper()
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug("Settings: %s", settings)


def run() -> None:
    """Configure logging once, then hand off to the subcommand CLI."""
    _configure_logging()
    raise SystemExit(main(sys.argv[1:]))


def run_checks() -> None:
    _configure_logging()
    raise SystemExit(check_main(sys.argv[1:]))


if __name__ == "__main__":
    run()
