"""Exception types raised by the library.

Every domain error derives from :class:`GasketError`, which the CLI maps to
exit code 1.
"""


class GasketError(ValueError):
    pass


class InvalidSurdError(GasketError):
    pass


class ComplexRootsError(GasketError):
    pass


class DegenerateError(GasketError):
    pass


class CoincidentError(GasketError):
    pass


class NotTangentError(GasketError):
    pass


class NotRepresentableError(GasketError):
    """An exact result would need a square root outside the rationals."""


class NonRealizableError(GasketError):
    pass


class InconsistencyError(GasketError):
    pass


class NonHyperbolicError(GasketError):
    pass


class NoIntegerDescentError(GasketError):
    pass


class UnsupportedError(GasketError):
    pass


class PreconditionError(GasketError):
    pass


class InvalidTripletError(GasketError):
    pass
