"""Exception hierarchy shared across the package."""


class SkewError(Exception):
    """Base class for every error raised by skewfree."""


class DomainError(SkewError):
    """Operands live in different rings, extensions or arities."""


class NotInvertible(SkewError):
    """An element or matrix that had to be a unit is not one."""


class CapExceeded(SkewError):
    """An enumeration would exceed its configured size cap."""


class Unsupported(SkewError):
    """No decision procedure is available for this coefficient ring."""


class ZeroPolynomial(SkewError):
    """The operation is undefined on the zero polynomial."""


class NotTriangular(SkewError):
    """sigma is not upper triangular."""


class InvalidStructure(SkewError):
    """sigma or delta violates a ring-law constraint.

    ``witness`` carries a concrete counterexample when one is known.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotCentral(SkewError):
    pass


class NotDiagonal(SkewError):
    pass


class NotScalarOnCenter(SkewError):
    pass


class InsufficientTruncation(SkewError):
    pass


class NilpotenceUnknown(SkewError):
    """Local nilpotence of delta could not be certified within the cap."""


class RelationCheckFailed(SkewError):
    def __init__(self, j, r, message=""):
        super().__init__(message or f"relation for generator {j} fails at r = {r}")
        self.j = j
        self.r = r


class NonzeroDerivation(SkewError):
    """Raised when a zero-divisor construction needs delta = 0.

    ``pair`` holds the degree-drop pair that the construction does produce.
    """

    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class ParseError(SkewError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class SpecError(SkewError):
    """Malformed ring-spec document; ``path`` locates the offending field."""

    def __init__(self, message, path=""):
        super().__init__(f"{path}: {message}" if path else message)
        self.path = path
