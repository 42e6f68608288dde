"""
Module responsible for configuration based on instructions in a profile yml config file.
"""
from __future__ import annotations

import os.path

from .configuration import Configuration
from .textformatter import TextFormatter

STANDARD_PROFILE = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(
    os.path.abspath(__file__)))), "config", "profiles", "standard.yml")


def main():
    """
    Responsible for loading and printing standard configuration.
    """
    Configuration(STANDARD_PROFILE).print()


def get_configuration(config_profile=None):
    """
    Loads a profile to get configuration parameters. Raises ValueError when
    the profile is missing or invalid.
    """
    try:
        return Configuration(config_profile or STANDARD_PROFILE).get()
    except ValueError as error:
        TextFormatter.print_error("Profile is invalid: %s" % error)
        raise


if __name__ == "__main__":
    main()
