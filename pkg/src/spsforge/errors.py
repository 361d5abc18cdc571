"""Exception hierarchy shared by all modules."""


class LatticeError(ValueError):
    """Base class for every validation failure raised by spsforge."""


class CycleDetected(LatticeError):
    pass


class NotTransitivelyReduced(LatticeError):
    def __init__(self, pair, via):
        self.pair = pair
        self.via = via
        super().__init__(
            f"cover {pair[0]}<{pair[1]} is implied through {via}")


class NotALattice(LatticeError):
    def __init__(self, pair, operation):
        self.pair = pair
        self.operation = operation
        super().__init__(
            f"{pair[0]} {operation} {pair[1]} has no unique solution")


class NoBounds(NotALattice):
    """No unique least or greatest element; ``pair`` holds two witnesses."""

    def __init__(self, pair=None, operation=None, message=None):
        self.pair = pair
        self.operation = operation
        LatticeError.__init__(self, message or
                              f"{pair[0]} and {pair[1]} are both "
                              f"{'maximal' if operation == 'join' else 'minimal'}")


class UnknownElement(LatticeError, KeyError):
    def __str__(self):
        return f"unknown element {self.args[0]!r}"


class TooLarge(LatticeError):
    pass


class NotPlanar(LatticeError):
    pass


class InconsistentRotation(LatticeError):
    pass


class CellNotFound(LatticeError):
    pass


class InternalInvariantViolation(RuntimeError):
    """Raised when a construction produces an invalid object.

    This always points at a bug in spsforge, never at bad input.
    """


class NotSPS(LatticeError):
    pass


class InvalidTarget(LatticeError):
    pass


class ParseError(LatticeError):
    def __init__(self, message, field=None):
        self.field = field
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)


class ValidationError(LatticeError):
    """Document parsed fine but describes an invalid lattice or diagram."""

    def __init__(self, cause, source=None):
        self.cause = cause
        self.source = source
        where = f"{source}: " if source else ""
        super().__init__(f"{where}{type(cause).__name__}: {cause}")
