"""Exception hierarchy shared by every module of the package."""


class DenMuneError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParameterError(DenMuneError, ValueError):
    """A scalar argument (``k``, an index, a mode name, ...) is out of range."""


class InvalidInputError(DenMuneError, ValueError):
    """Input data is empty, ragged, non-finite or otherwise unusable."""


class DatasetParseError(InvalidInputError):
    """A dataset file could not be parsed.

    ``line`` and ``column`` are 1-based and may be ``None`` when the error is
    not tied to a single cell.
    """

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class EmptyTableError(InvalidInputError):
    """Every point was excluded before a contingency table could be built."""
