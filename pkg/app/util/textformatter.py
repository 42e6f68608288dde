"""
Module for formatting text - typically used in conjunction with the command line interface.

Results go to stdout; errors and diagnostics go to stderr.
"""
from __future__ import annotations

import sys

from termcolor import colored

CHECK = u'✓'


class TextFormatter(object):
    """
    Text formatter for displaying different kinds of formatted text.
    """

    use_color = True

    @staticmethod
    def disable_color():
        """
        Turns off colored output, e.g. for --no-color.
        """
        TextFormatter.use_color = False

    @staticmethod
    def color_text(text, color, text_attributes=None):
        """
        Returns text with defined color and text_attributes.
        """
        if not TextFormatter.use_color:
            return text
        if text_attributes is None:
            return colored(text, color, attrs=[])
        return colored(text, color, attrs=text_attributes)

    @staticmethod
    def print_title(title_text):
        """
        Prints a blue, bold title.
        """
        title = TextFormatter.color_text(title_text, "blue", ['bold'])
        TextFormatter.print_box(title, title_text, "=")

    @staticmethod
    def print_heading(heading_text):
        """
        Prints a green, bold heading.
        """
        heading = TextFormatter.color_text(heading_text, "green", ['bold'])
        TextFormatter.print_new_line()
        TextFormatter.print_box(heading, heading_text)

    @staticmethod
    def print_error(msg):
        """
        Prints error message to stderr.
        """
        error_msg = TextFormatter.color_text("[ERROR] %s" % msg, "red", ['bold'])
        print(error_msg, file=sys.stderr)

    @staticmethod
    def print_status(msg):
        """
        Prints status message.
        """
        status_msg = TextFormatter.color_text("%s %s" % (CHECK, msg), "green")
        print(status_msg)

    @staticmethod
    def print_info(msg):
        """
        Prints information message to stderr.
        """
        info_msg = TextFormatter.color_text("[INFO] %s" % msg, "white", ['bold'])
        print(info_msg, file=sys.stderr)

    @staticmethod
    def print_pair(key, val):
        """
        Prints a key value pair.
        """
        adjusted_key = ("{0}:".format(key)).ljust(15)
        formatted_key = TextFormatter.color_text(adjusted_key, "cyan", ['bold'])
        formatted_val = TextFormatter.color_text(str(val), "magenta", ['bold'])
        print("{0}{1}".format(formatted_key, formatted_val))

    @staticmethod
    def print_spacer(length=30, character_type="-"):
        """
        Prints separator line.
        """
        print(character_type * length)

    @staticmethod
    def print_new_line():
        """
        Prints new line.
        """
        print("")

    @staticmethod
    def print_box(msg, plain_msg=None, character_type="-"):
        """
        Prints box with defined msg in the middle of the box. `plain_msg` is
        the uncolored text, used to size the box.
        """
        length = len(plain_msg if plain_msg is not None else msg) + 4
        TextFormatter.print_spacer(length, character_type)
        print("# %s #" % msg)
        TextFormatter.print_spacer(length, character_type)
