"""Exception types shared across the package.

Everything raised here is a ValueError or RuntimeError subclass so callers
that do not care about the fine distinctions can catch the usual built-ins.
The CLI maps these onto exit codes: input problems (ParseError, SchemaError,
ModelInvalid) exit 3, precondition failures (NotPrincipal,
SimplicityNotCertified, TruncationUnsound, NotFinitelyGenerated) exit 2.
"""

from __future__ import annotations

__all__ = [
    "BoundaryMismatch",
    "CommutationFailure",
    "DimensionMismatch",
    "ModelInvalid",
    "NotAComplex",
    "NotFinitelyGenerated",
    "NotPrincipal",
    "ParseError",
    "SchemaError",
    "ShapeMismatch",
    "SimplicityNotCertified",
    "SizeBoundExceeded",
    "TruncationUnsound",
]


class ShapeMismatch(ValueError):
    """Matrix operands have incompatible shapes."""


class DimensionMismatch(ValueError):
    """Consecutive boundary maps do not fit together as a complex."""


class NotAComplex(ValueError):
    """The composite of consecutive boundary maps is nonzero."""


class CommutationFailure(ValueError):
    """An endomorphism does not commute with the connecting data it was paired with."""


class SizeBoundExceeded(RuntimeError):
    """A nerve level grew past the configured size bound."""


class SimplicityNotCertified(ValueError):
    """Telescoping failed to certify a Bratteli diagram as simple with Cantor path space."""


class NotPrincipal(ValueError):
    """A finite groupoid has nontrivial isotropy where a principal one was required."""


class NotFinitelyGenerated(ValueError):
    """A colimit-valued group entered a computation that needs finite presentations."""


class TruncationUnsound(ValueError):
    """A truncated graded group was summed without acknowledging the truncation."""


class BoundaryMismatch(ValueError):
    """Signed face transfers disagree with the boundary matrix they must reproduce."""


class ModelInvalid(ValueError):
    """A groupoid model failed its validity checks."""

    def __init__(self, violations: list[str]):
        self.violations = list(violations)
        super().__init__("; ".join(violations))


class ParseError(ValueError):
    """Input text is not well-formed JSON."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class SchemaError(ValueError):
    """Well-formed JSON that does not match the model schema.

    ``pointer`` locates the offending value as a JSON pointer ("/factors/1/matrix/0").
    """

    def __init__(self, pointer: str, message: str):
        self.pointer = pointer or "/"
        super().__init__(f"{self.pointer}: {message}")
