"""Exception hierarchy.

Every exception carries a short ``kind`` string; the command line tool
prints it on stderr so scripts can branch on it.
"""


class WeylError(Exception):
    kind = "WeylError"


class SignatureMismatch(WeylError, ValueError):
    kind = "SignatureMismatch"


class InvalidIndex(WeylError, IndexError):
    kind = "InvalidIndex"


class PreconditionViolated(WeylError, ValueError):
    kind = "PreconditionViolated"


class NilpotencyCapExceeded(WeylError):
    """An iterated derivative was still nonzero when the cap was reached."""

    kind = "NilpotencyCapExceeded"

    def __init__(self, message, cap=None):
        super().__init__(message)
        self.cap = cap


class InvalidEndomorphism(WeylError, ValueError):
    """Generator images violate the defining relations."""

    kind = "InvalidEndomorphism"

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class JacobianError(WeylError):
    kind = "JacobianError"


class NotCentral(JacobianError):
    kind = "NotCentral"


class NotScalar(JacobianError):
    kind = "NotScalar"

    def __init__(self, message, value=None):
        super().__init__(message)
        self.value = value


class ZeroDeterminant(JacobianError):
    kind = "Zero"


class KroneckerCheckFailed(WeylError):
    kind = "KroneckerCheckFailed"


class NotScalarResult(WeylError):
    kind = "NotScalarResult"


class DegreeBoundExceeded(WeylError):
    kind = "DegreeBoundExceeded"


class VerificationFailed(WeylError):
    kind = "VerificationFailed"


class NotInvertible(WeylError, ZeroDivisionError):
    kind = "NotInvertible"


class NonScalarCommutator(WeylError):
    kind = "NonScalarCommutator"

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class CommutationCheckFailed(WeylError):
    kind = "CommutationCheckFailed"


class ParseError(WeylError, SyntaxError):
    """Syntax or semantic error in a source document, with a position."""

    kind = "ParseError"

    def __init__(self, message, line=None, column=None):
        where = f"{line}:{column}: " if line is not None else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


class UndeclaredGenerator(ParseError):
    kind = "UndeclaredGenerator"


class ArrowCountError(ParseError):
    kind = "ArrowCountError"
