"""Exception types raised while loading graph files."""


class GraphInputError(Exception):
    """Base class for all loader errors."""


class FormatError(GraphInputError):
    """Malformed input text.

    Carries the byte offset of the offending input where one is known, so
    callers can report file positions.
    """

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class MappingError(GraphInputError):
    """The file could not be mapped and the buffered fallback failed too."""
