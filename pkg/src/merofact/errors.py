"""Exception hierarchy shared by every module of the package."""


class MerofactError(Exception):
    """Base class for all errors raised by merofact."""


class PoleProximity(MerofactError, ValueError):
    """The argument lies within the guard radius of a pole."""

    def __init__(self, message, pole=None):
        super().__init__(message)
        self.pole = pole


class DomainError(MerofactError, ValueError):
    """The argument is outside the domain of the operation."""


class QuadratureFailure(MerofactError, ArithmeticError):
    """An adaptive integrator did not reach the requested tolerance."""


class ContourError(MerofactError, ValueError):
    """The contour is not isolating: it touches or encloses another singularity."""


class NonFiniteValue(MerofactError, ArithmeticError):
    """An evaluator returned inf or nan at a quadrature node."""


class DivergenceDetected(MerofactError, ArithmeticError):
    """The symmetric average grows as epsilon shrinks (pole of order >= 2)."""


class InsufficientCoefficients(MerofactError, ValueError):
    """A Laurent window is too short for the requested operation."""


class NoClosedForm(MerofactError, IndexError):
    """No closed-form value is tabulated at the requested index."""


class Unsupported(MerofactError, ValueError):
    """The requested variant is not built in."""


class EquationSyntaxError(MerofactError, SyntaxError):
    """The equation text does not match the grammar."""

    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class NotEulerForm(MerofactError, ValueError):
    """A term's power of x differs from its derivative order."""

    def __init__(self, message, term=None):
        super().__init__(message)
        self.term = term


class RangeError(MerofactError, ValueError):
    """An integer argument is outside the supported range."""


class ConvergenceFailure(MerofactError, ArithmeticError):
    """An iterative root finder did not converge."""


class RealFormUnavailable(MerofactError, ValueError):
    """A complex root has no conjugate partner, so no real basis exists."""


class UnknownFunction(MerofactError, KeyError):
    """The function name is not in the registry."""

    def __str__(self):
        return str(self.args[0]) if self.args else "unknown function"


class MethodInapplicable(MerofactError, ValueError):
    """The requested method cannot be applied at this point."""
