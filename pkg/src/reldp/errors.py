class ReldpError(Exception):
    """Base class for all errors raised by this package."""


class InvalidPositionError(ReldpError):
    pass


class MalformedRuleError(ReldpError):
    pass


class MarkPlacementError(ReldpError):
    pass


class OverlapError(ReldpError):
    pass


class ParseError(ReldpError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{line}:{column}: {message}"
        super().__init__(message)
