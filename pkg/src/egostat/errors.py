"""Exception types raised by egostat."""


class EgostatError(Exception):
    """Base class for all library errors."""


class ParseError(EgostatError, ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class UndefinedMetricError(EgostatError, ValueError):
    """A statistic is mathematically undefined for the given input.

    ``reason`` is a short machine-friendly string that ends up in reports
    next to the null value.
    """

    def __init__(self, reason):
        self.reason = reason
        super().__init__(reason)


class InsufficientDataError(EgostatError, ValueError):
    pass


class DegenerateFitError(EgostatError, ValueError):
    pass
