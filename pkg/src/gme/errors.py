"""Exception hierarchy. Every error raised by the library derives from GMEError."""


class GMEError(ValueError):
    pass


class DimensionMismatch(GMEError):
    pass


class ZeroVector(GMEError):
    pass


class OutOfRange(GMEError):
    pass


class CountMismatch(GMEError):
    pass


class TooLarge(GMEError):
    pass


class WeightSumError(GMEError):
    pass


class BadParty(GMEError):
    pass


class ParamOutOfRange(GMEError):
    pass


class BadShape(GMEError):
    pass


class InvalidState(GMEError):
    """A density matrix or pure state violates its invariants."""


class SingleParty(GMEError):
    pass


class NotBipartite(GMEError):
    pass


class NotSymmetric(GMEError):
    pass


class NotTracePreserving(GMEError):
    pass


class BadIndices(GMEError):
    pass


class NotEntangled(GMEError):
    pass


class InvalidWitness(GMEError):
    pass


class TooFewPoints(GMEError):
    pass


class DegenerateGrid(GMEError):
    pass


class TooManyComponents(GMEError):
    pass


class DomainError(GMEError):
    pass


class SymmetryBroken(GMEError):
    pass


class NoTangent(GMEError):
    pass


class OutOfDomain(GMEError):
    pass
