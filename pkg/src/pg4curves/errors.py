"""Exception hierarchy.

The CLI maps these onto exit codes: parse problems -> 2, geometric
degeneracy -> 3, invalid specifications -> 4.
"""


class PG4Error(Exception):
    """Base class for all library errors."""


# -- jets -------------------------------------------------------------------

class DomainErrorJet(PG4Error, ValueError):
    """An elementary function was applied outside its domain."""


class DivisionByZeroJet(DomainErrorJet, ZeroDivisionError):
    """Division by a jet whose value is (numerically) zero."""


# -- parsing ----------------------------------------------------------------

class ParseError(PG4Error):
    def __init__(self, message, line=1, column=1, expected=()):
        self.line = line
        self.column = column
        self.expected = tuple(sorted(set(expected)))
        self.reason = message
        loc = f"line {line}, column {column}"
        if self.expected:
            message = f"{message} (expected one of: {', '.join(self.expected)})"
        super().__init__(f"{loc}: {message}")


class UnknownIdentifier(ParseError):
    def __init__(self, name, line=1, column=1):
        self.name = name
        super().__init__(f"unknown identifier {name!r}", line, column)


class ArityError(ParseError):
    pass


# -- geometry ---------------------------------------------------------------

class GeometryError(PG4Error):
    """The curve violates a non-degeneracy assumption at some point."""


class NotAdmissible(GeometryError):
    pass


class DegenerateFirstCurvature(GeometryError):
    pass


class DegenerateTorsion(GeometryError):
    pass


class DegenerateThirdCurvature(GeometryError):
    pass


class LightlikeFrameVector(GeometryError):
    pass


class ApparatusFailure(GeometryError):
    pass


class NotApplicable(PG4Error):
    """A theorem-specific check was requested for a curve outside its class."""


class PreconditionViolation(PG4Error):
    pass


class IllConditionedFit(PG4Error):
    pass


# -- specifications ---------------------------------------------------------

class InvalidSpecification(PG4Error):
    pass


class InconsistentSignature(InvalidSpecification):
    pass


class DomainContainsSingularity(InvalidSpecification):
    pass


class StepTooLarge(InvalidSpecification):
    pass


class InsufficientSamples(InvalidSpecification):
    pass
