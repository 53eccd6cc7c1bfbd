#                   [ BELIEFTREE ]
# This code is developed for the belieftree inference engine. All
# code is under the license provided with the 'belieftree' module.
# Copyright belieftree contributors, 2025.

"""
This module reports the progress of the engine on the console.
By default, only errors are printed. If the verbosity is raised, then the
compilation, approximation and propagation steps are reported as well.
All messages are written to standard error so that data written to
standard output by the command line remains machine readable.
"""

import datetime
import sys


# ANSI escape codes
__RESET = "\033[0m"
__RED = "\033[31m"
__GREEN = "\033[32m"
__YELLOW = "\033[33m"
__PURPLE = "\033[35m"
__CYAN = "\033[36m"
__GREY = "\033[90m"

# Defines the color of each kind of message
__LOG = __GREY
__WARNING = __YELLOW
__ERROR = __RED
__SUCCESS = __GREEN
__INFO = __CYAN
__DEBUG = __PURPLE

LOG_VERBOSITY: int = 0
"""Defines the verbosity for every step of compilation, approximation and propagation."""

SUCCESS_VERBOSITY: int = 1
"""Defines the verbosity for all completed artefacts, such as compiled or approximated trees."""

INFO_VERBOSITY: int = 2
"""Defines the verbosity for summary information, such as statistics and error masses."""

WARNING_VERBOSITY: int = 3
"""Defines the verbosity for warnings, such as excluded cases and fallbacks."""

ERROR_VERBOSITY: int = 4
"""Defines the verbosity for only errors."""

# Defines whether the printer is enabled
__verbose: bool = False
__verbose_level: int = 0

# Prefix each message with the wall-clock time
__display_time: bool = False

# Defines whether colors should be used
__display_color: bool = True

# Defines any callbacks
__callbacks: list = []


def set_verbosity(level: int) -> None:
    """
    Sets the lowest kind of message that is printed, from LOG_VERBOSITY up
    to ERROR_VERBOSITY. Any larger value silences the printer; callbacks
    still receive every message.

    :param level:   The lowest verbosity level to print
    :type level:    int
    """

    global __verbose, __verbose_level

    if level <= ERROR_VERBOSITY:
        __verbose_level = level
        __verbose = True
    else:
        __verbose_level = 0
        __verbose = False


def get_verbosity() -> int:
    """
    Returns the current verbosity level of the printer.

    :returns:   The verbosity level
    :rtype:     int
    """

    return __verbose_level


def output(data: str, color: str = "") -> None:
    """
    Outputs text to the error stream assuming that the verbose level
    allows messages of that kind.

    :param data:    The message to report
    :type data:     str
    :param color:   The ANSI colour code of the message kind
    :type color:    str
    """

    if __verbose:
        if __display_time:
            data = "[%s] %s" % (__get_time_str(), data)
        if __display_color:
            data = color + data + __RESET
        print(data, file=sys.stderr)


def log(data: str) -> None:
    """
    Prints general log text, describing the individual steps that are
    performed. This requires a LOG_VERBOSITY level.

    :param data:    The message to report
    :type data:     str
    """

    __call_callbacks("log", data)
    if __verbose_level <= LOG_VERBOSITY:
        output(data, __LOG)


def success(data: str) -> None:
    """
    Prints success messages for completed artefacts. This requires at
    least a SUCCESS_VERBOSITY level.

    :param data:    The message to report
    :type data:     str
    """

    __call_callbacks("success", data)
    if __verbose_level <= SUCCESS_VERBOSITY:
        output(data, __SUCCESS)


def info(data: str) -> None:
    """
    Prints information messages, such as statistics and error masses.
    This requires at least a INFO_VERBOSITY level.

    :param data:    The message to report
    :type data:     str
    """

    __call_callbacks("info", data)
    if __verbose_level <= INFO_VERBOSITY:
        output(data, __INFO)


def warning(data: str) -> None:
    """
    Prints warning messages, providing information about excluded cases
    or results that should not be trusted. This requires at least a
    WARNING_VERBOSITY level.

    :param data:    The message to report
    :type data:     str
    """

    __call_callbacks("warning", data)
    if __verbose_level <= WARNING_VERBOSITY:
        output(data, __WARNING)


def error(data: str) -> None:
    """
    Prints error messages. This requires any valid verbosity level.

    :param data:    The message to report
    :type data:     str
    """

    __call_callbacks("error", data)
    if __verbose_level <= ERROR_VERBOSITY:
        output(data, __ERROR)


def debug(data: str) -> None:
    """
    Prints debug messages. This will always print provided the printer
    is enabled, regardless of the verbosity level.

    :param data:    The message to report
    :type data:     str
    """

    __call_callbacks("debug", data)
    output(data, __DEBUG)


def display_time(enable: bool) -> None:
    """
    Switches the timestamp prefix on or off.

    :param enable:  Whether messages start with the current time
    :type enable:   bool
    """

    global __display_time
    __display_time = enable


def display_color(enable: bool) -> None:
    """
    Defines whether the ANSI colors should be written with the messages.
    This is disabled when the error stream is not a terminal.

    :param enable:  A flag for enabling the colors
    :type enable:   bool
    """

    global __display_color
    __display_color = enable


def add_callback(callback: callable) -> None:
    """
    Adds a callback function that will be called whenever a message is printed,
    regardless of the verbosity level.

    :param callback:  The callback function to add, taking the type and the message
    :type callback:   callable
    """

    if callable(callback):
        __callbacks.append(callback)
    else:
        raise TypeError("The callback must be callable.")


def remove_callback(callback: callable) -> None:
    """
    Stops sending messages to a callback added with add_callback.

    :param callback:  The callback function to remove
    :type callback:   callable
    """

    if callback in __callbacks:
        __callbacks.remove(callback)
    else:
        raise ValueError("The callback was never added.")


def __call_callbacks(type: str, data: str) -> None:
    for callback in __callbacks:
        callback(type, data)


def __get_time_str() -> str:
    return datetime.datetime.now().isoformat(sep=" ", timespec="milliseconds")


# Quiet unless asked
set_verbosity(ERROR_VERBOSITY)
display_time(False)
display_color(sys.stderr.isatty())
