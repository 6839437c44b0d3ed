import sys
from dotenv import load_dotenv

# Logging is configured on first import of src, so .env must be read first
load_dotenv()

from src.cli.runner import run  # noqa: E402


def main():
    """Main entry point for the tdw divisor workbench."""
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
