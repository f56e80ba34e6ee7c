"""Exception hierarchy."""


class NahError(Exception):
    """Base class for all errors raised by nahgraph."""


class PreconditionError(NahError, ValueError):
    """An operation was called on inputs outside its domain."""


class ParseError(NahError, ValueError):
    def __init__(self, message: str, offset: int | None = None, text: str | None = None):
        self.offset = offset
        self.text = text
        where = f" at offset {offset}" if offset is not None else ""
        super().__init__(f"{message}{where}")


class NonPositiveExponent(ParseError):
    pass


class ZeroMultiplicity(ParseError):
    pass


class EqualCircles(PreconditionError):
    pass


class EmptyClass(PreconditionError):
    pass


class DimensionMismatch(PreconditionError):
    pass


class NotAGraph(PreconditionError):
    pass


class NotSimplyLaced(PreconditionError):
    pass


class UltrametricViolation(PreconditionError):
    def __init__(self, message: str, triple=None):
        self.triple = triple
        super().__init__(message)


class TwistedTree(PreconditionError):
    pass


class TreeClassMismatch(PreconditionError):
    pass


class UnknownFormat(NahError, ValueError):
    pass


class SizeLimit(NahError):
    pass
