"""Exception types shared across the pipeline stages."""


class LexmaskError(Exception):
    """Base class for all pipeline errors."""


class ValidationError(LexmaskError):
    """A value or configuration violates a documented contract."""


class RecordError(LexmaskError):
    """A single input record is malformed (bad JSON, bad encoding, bad fields)."""

    def __init__(self, path: str, line: int, reason: str):
        super().__init__(path, line, reason)
        self.path = path
        self.line = line
        self.reason = reason

    def __str__(self) -> str:
        return f"{self.path}:{self.line}: {self.reason}"
