"""Exception hierarchy for ioncavity.

Every error also derives from the builtin exception that matches its meaning,
so callers may catch either the specific class or e.g. ``ValueError``.
"""


class IonCavityError(Exception):
    """Base class for all errors raised by ioncavity."""


class NonHermitianInput(IonCavityError, ValueError):
    pass


class NoConvergence(IonCavityError, ArithmeticError):
    pass


class InvalidParams(IonCavityError, ValueError):
    pass


class CutoffTooSmall(IonCavityError, ValueError):
    pass


class QuadratureNoConvergence(IonCavityError, ArithmeticError):
    pass


class GridMiss(IonCavityError, LookupError):
    pass


class InvalidState(IonCavityError, ValueError):
    pass


class DimensionMismatch(IonCavityError, ValueError):
    pass


class DegenerateFit(IonCavityError, ValueError):
    pass


class ParseError(IonCavityError, ValueError):
    """Raised for malformed scenario files; carries the offending line."""

    def __init__(self, message: str, line: int = None, key: str = None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)


class ValidationError(IonCavityError, ValueError):
    """Raised when a scenario violates one or more invariants."""

    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("Invalid scenario: " + "; ".join(self.problems))


class UnknownFigure(IonCavityError, LookupError):
    pass


class IoError(IonCavityError, OSError):
    pass


class ScenarioError(IonCavityError):
    """Wraps an error raised while running a scenario, with its context."""

    def __init__(self, message: str, kappa: float = None, t_deg: float = None):
        self.kappa = kappa
        self.t_deg = t_deg
        context = []
        if kappa is not None:
            context.append(f"kappa={kappa:g}")
        if t_deg is not None:
            context.append(f"T={t_deg:g} deg")
        if context:
            message = f"{message} [{', '.join(context)}]"
        super().__init__(message)
