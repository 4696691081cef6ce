"""Exception types raised across the toolkit."""


class PaperstructError(Exception):
    """Base class for all toolkit errors."""


class PdfReadError(PaperstructError):
    """A PDF file could not be read (corrupt, encrypted, or unsupported)."""


class InputPathError(PaperstructError):
    """The input path does not exist or contains no PDF files."""


class MissingStageError(PaperstructError):
    """An operation was invoked before one of its prerequisite steps."""

    def __init__(self, needed: str, operation: str):
        self.needed = needed
        self.operation = operation
        super().__init__(f"{operation} requires {needed!r} to have run first")


class AnnotationError(PaperstructError):
    """An external annotation file is missing, unparsable, or inconsistent."""


class PipelineError(PaperstructError):
    """A pipeline definition is invalid (unknown step, bad option, ordering)."""

    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = violations or []
        super().__init__(message)
