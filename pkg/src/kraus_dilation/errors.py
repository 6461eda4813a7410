"""Exception hierarchy shared by every module in the package."""


class KrausDilationError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(KrausDilationError, ValueError):
    pass


class InvalidParameter(KrausDilationError, ValueError):
    pass


class NotHermitian(KrausDilationError, ValueError):
    pass


class NotPSD(KrausDilationError, ValueError):
    pass


class NotContraction(KrausDilationError, ValueError):
    pass


class NotUnitary(KrausDilationError, ValueError):
    pass


class NotNormalized(KrausDilationError, ValueError):
    pass


class ZeroObservable(KrausDilationError, ValueError):
    pass


class MissingBranch(KrausDilationError, KeyError):
    pass


class InternalConsistency(KrausDilationError, RuntimeError):
    """A recovered quantity that must be real carried a non-negligible imaginary part."""
