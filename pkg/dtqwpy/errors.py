# Copyright (c) 2021 the dtqwpy developers
# Licensed under the MIT License. See LICENSE for details.

"""
Exceptions raised by dtqwpy.

Every error derives from :class:`DTQWError` so that the command line can map any library
failure onto a single exit code.
"""


class DTQWError(Exception):
    pass


class InvalidSizeError(DTQWError, ValueError):
    pass


class UnsupportedDimensionError(DTQWError, ValueError):
    pass


class GraphValidationError(DTQWError, ValueError):
    pass


class EdgeListParseError(DTQWError, ValueError):
    def __init__(self, line_number, message):
        """
        :param line_number: (int) 1-based line of the offending entry
        :param message: (string) what was wrong with it
        """
        super().__init__("line " + str(line_number) + ": " + message)
        self.line_number = line_number


class ConfigurationError(DTQWError, ValueError):
    pass


class ContractViolation(DTQWError, ValueError):
    pass


class NoCenterError(DTQWError, ValueError):
    pass


class OracleTooLargeError(DTQWError):
    pass
