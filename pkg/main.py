"""Command-line entry point for targetfactor."""

import logging
import sys

from dotenv import load_dotenv

load_dotenv()

import settings  # noqa: E402
from cli.handlers import router  # noqa: E402

logger = logging.getLogger(__name__)


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    verbose = "-v" in argv or "--verbose" in argv
    logging.basicConfig(
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        level=logging.DEBUG if verbose else settings.LOG_LEVEL,
        stream=sys.stderr,
    )
    return router.dispatch(argv)


if __name__ == "__main__":
    sys.exit(main())
