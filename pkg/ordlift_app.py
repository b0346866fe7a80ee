"""
ordlift - exact orders, translation numbers and causal covers
Command-line entry point: validates the configuration, then hands over to the click CLI
"""
import logging
import sys

from ordlift.cli import cli
from ordlift.config import get_configuration_status, validate_configuration

logger = logging.getLogger(__name__)


def main():
    """Main application entry point"""
    is_valid, errors = validate_configuration()
    if not is_valid:
        for error in errors:
            logger.error("Configuration issue: %s", error)
        sys.exit(2)

    logger.debug("Configuration: %s", get_configuration_status())
    cli(prog_name="ordlift")


if __name__ == "__main__":
    main()
