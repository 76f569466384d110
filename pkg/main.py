"""Main entry point: `python main.py <command> [options]`."""
import sys
from src.cli.app import main
from src.core.config import settings
from src.utils.logger import app_logger


if __name__ == "__main__":
    app_logger.debug(f"Starting {settings.app_name} {settings.version} ({settings.environment})")
    sys.exit(main())
