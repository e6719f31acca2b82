"""Exception types shared across the toolkit."""


class FangraphError(Exception):
    """Base class for all toolkit errors."""


class ParseError(FangraphError):
    """Malformed input file. Carries the 1-based line number when known."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ConfigError(FangraphError):
    """Invalid configuration or flag combination (CLI exit code 2)."""
