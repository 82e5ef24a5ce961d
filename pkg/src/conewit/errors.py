"""Exception hierarchy shared by every conewit module."""


class ConewitError(ValueError):
    """Base class for all input/contract errors raised by conewit."""


class NotHermitian(ConewitError):
    pass


class NonSquare(ConewitError):
    pass


class DimensionMismatch(ConewitError):
    pass


class InvariantViolation(ConewitError):
    pass


class PreconditionViolation(ConewitError):
    pass


class BadDiagonal(PreconditionViolation):
    pass


class BadVertexSet(ConewitError):
    pass


class TooLarge(ConewitError):
    pass


class NotOnFace(ConewitError):
    """The state does not lie on the requested face; ``residual`` says by how much."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class NotInCone(ConewitError):
    pass


class NotDNN(NotInCone):
    pass


class WitnessNotInDualCone(ConewitError):
    pass


class WrongDimension(DimensionMismatch):
    pass


class FaceUnsatisfiable(ConewitError):
    pass
