"""Exception hierarchy shared by the library and the CLI."""


class HeckeCatError(Exception):
    """Base class for all errors raised by this package."""


class InvalidSystem(HeckeCatError, ValueError):
    pass


class NonSymmetricMatrix(InvalidSystem):
    pass


class BadDiagonal(InvalidSystem):
    pass


class UnsupportedOrder(InvalidSystem):
    pass


class BadWeight(InvalidSystem):
    pass


class OddEdgeWeightMismatch(InvalidSystem):
    pass


class LengthCapExceeded(HeckeCatError):
    pass


class CapExceeded(HeckeCatError):
    pass


class NotInSubgroup(HeckeCatError, ValueError):
    pass


class NotInParabolic(HeckeCatError, ValueError):
    pass


class VerificationFailure(HeckeCatError, AssertionError):
    """A statement that should hold by theory failed on a concrete instance."""


class NotPreserved(VerificationFailure):
    pass


class SprimeLookupFailed(VerificationFailure):
    pass


class CacheMismatch(HeckeCatError):
    pass


class Unsupported(HeckeCatError):
    pass


class SpecFileError(HeckeCatError, ValueError):
    """A group spec file failed to parse; the message names the line or field."""
