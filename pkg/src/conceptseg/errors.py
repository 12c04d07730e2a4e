"""Exception hierarchy shared by every stage of the pipeline."""

from __future__ import annotations


class ConceptSegError(Exception):
    """Base class for all errors raised by conceptseg."""


class InputError(ConceptSegError, ValueError):
    """An argument is out of range, unknown, or inconsistent."""


class PreconditionError(ConceptSegError, ValueError):
    """An operation was called on data that violates its precondition."""


class ParseError(InputError):
    """A line of an annotated corpus or pair list could not be parsed."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where = f"{where}{line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")


class FormatError(InputError):
    """A context, lattice or taxonomy file is malformed or truncated."""

    def __init__(self, message: str, section: str | None = None):
        self.section = section
        super().__init__(message)
