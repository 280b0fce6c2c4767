EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SHAPE = 3
EXIT_DECODE = 4


class RankCodeError(Exception):
    """Base class for every error raised by rankcode."""


class FieldMismatchError(RankCodeError, TypeError):
    pass


class ShapeError(RankCodeError, ValueError):
    pass


class ParameterError(RankCodeError, ValueError):
    pass


class FormatError(RankCodeError, ValueError):
    """Malformed or truncated text input."""


class InconsistentSystemError(RankCodeError):
    pass


class OracleLimitError(RankCodeError):
    pass


class DecodingFailure(RankCodeError):
    """Decoder gave up; ``kind`` is a short label used in reports."""

    def __init__(self, reason: str, kind: str = "decoding"):
        super().__init__(reason)
        self.reason = reason
        self.kind = kind
