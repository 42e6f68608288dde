"""
Creates Configuration object based on data in a profile yml config file.
"""
from __future__ import annotations

import os.path

import yaml

from .textformatter import TextFormatter

DEFAULTS = {
    "name": "Standard Configuration",
    "info-suffix": ".info",
    "db-env-var": "ERSQL_DB",
    "format": "sql",
    "null-literal": "null",
    "busy-timeout": 5.0,
}

FORMATS = ("sql", "plan")


class Configuration(object):
    """
    The Configuration class creates a configuration instance from a profile yaml file.
    """

    def __init__(self, config_profile):
        """ The Configuration class constructor instantiates the Configuration class. """

        self.config_profile = config_profile
        self.check_config_file()

    def check_config_file(self):
        """ Checks for an existing yaml configuration profile. """

        if not os.path.isfile(self.config_profile):
            raise ValueError("The configuration profile %s does not exist." % self.config_profile)

    def load(self):
        """
        Reads the raw mapping of the profile.
        """
        with open(self.config_profile, "r", encoding="utf-8") as config_profile:
            try:
                configuration = yaml.safe_load(config_profile)
            except yaml.YAMLError as error:
                raise ValueError("The configuration profile %s is not valid YAML: %s"
                                 % (self.config_profile, error))
        if configuration is None:
            return {}
        if not isinstance(configuration, dict):
            raise ValueError("The configuration profile must hold a mapping.")
        return configuration

    def get(self):
        """
        Maps configuration from profile to a dictionary, filling in defaults
        and validating every key.
        """
        configuration = dict(DEFAULTS)
        for key, value in self.load().items():
            if key not in DEFAULTS:
                raise ValueError("Unknown configuration key '%s'." % key)
            configuration[key] = value
        validate(configuration)
        return configuration

    def print(self):
        """
        Displays contents of configuration profile.
        """
        TextFormatter.print_heading("Current Configuration")
        configuration = self.get()
        for key in sorted(configuration.keys()):
            TextFormatter.print_pair(key, configuration[key])


def validate(configuration):
    """
    Raises ValueError naming the first key with a wrongly typed value.
    """
    for key in ("name", "info-suffix", "db-env-var", "null-literal"):
        if not isinstance(configuration[key], str) or not configuration[key]:
            raise ValueError("Configuration key '%s' must be a non-empty string." % key)
    if configuration["format"] not in FORMATS:
        raise ValueError("Configuration key 'format' must be one of %s." % ", ".join(FORMATS))
    timeout = configuration["busy-timeout"]
    if isinstance(timeout, bool) or not isinstance(timeout, (int, float)) or timeout < 0:
        raise ValueError("Configuration key 'busy-timeout' must be a non-negative number.")
    configuration["busy-timeout"] = float(timeout)
