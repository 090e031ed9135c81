"""Exception hierarchy. Each class carries the CLI exit code it maps to."""


class FilterError(Exception):
    exit_code = 1


class UsageError(FilterError):
    exit_code = 1


class DataError(FilterError):
    """Malformed or inconsistent input data (line counts, encodings, values)."""

    exit_code = 2

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ModelError(FilterError):
    """Unreadable, incompatible or missing model artifact."""

    exit_code = 3
