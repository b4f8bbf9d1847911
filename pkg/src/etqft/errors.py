"""Exception hierarchy shared by all modules."""


class EtqftError(Exception):
    pass


class ShapeError(EtqftError, ValueError):
    """Matrix or structure dimensions do not line up."""


class PreconditionError(EtqftError, ValueError):
    pass


class ValidationError(EtqftError):
    """An object failed its axiom check; carries the failing report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class CompositionError(EtqftError, ValueError):
    """Boundaries of cells to be composed do not match."""


class RestrictionError(EtqftError, ValueError):
    pass


class ParseError(EtqftError, ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


class CobTypeError(EtqftError, TypeError):
    def __init__(self, message, line=None, column=None):
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(message + where)
        self.line = line
        self.column = column
