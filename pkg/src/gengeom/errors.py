"""Exception hierarchy shared by every layer of the package."""


class GenGeomError(Exception):
    """Base class for all errors raised by gengeom."""


class DimensionMismatch(GenGeomError, ValueError):
    pass


class DivisionByZeroField(GenGeomError, ZeroDivisionError):
    pass


class SingularMatrix(GenGeomError, ArithmeticError):
    """Determinant vanishes identically as a rational function."""


class DegreeError(GenGeomError, ValueError):
    pass


class ExpressionSyntaxError(GenGeomError, ValueError):
    """Malformed scalar expression; ``offset`` is the byte offset of the problem."""

    def __init__(self, message: str, text: str, offset: int):
        super().__init__(f"{message} at offset {offset} in {text!r}")
        self.message = message
        self.text = text
        self.offset = offset


class UnknownVariable(GenGeomError, ValueError):
    def __init__(self, name: str, nvars: int):
        super().__init__(f"unknown variable {name!r} on a {nvars}-dimensional chart")
        self.name = name
        self.nvars = nvars


class FrameNotIsotropic(GenGeomError, ValueError):
    pass


class RankMismatch(GenGeomError, ValueError):
    pass


class DegenerateB(GenGeomError, ValueError):
    pass


class DimensionOdd(GenGeomError, ValueError):
    pass


class NotCompatible(GenGeomError, ValueError):
    """Generalized metric and generalized almost complex structure do not commute."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotHermitianInput(GenGeomError, ValueError):
    pass


class SchemaError(GenGeomError, ValueError):
    def __init__(self, field: str, reason: str):
        super().__init__(f"{field}: {reason}")
        self.field = field
        self.reason = reason


class DegenerateMetric(GenGeomError, ValueError):
    pass
