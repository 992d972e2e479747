"""Exception hierarchy shared by the solver, the exact solutions and the CLI."""


class KineticError(Exception):
    """Base class for every error raised by kinetic1d."""


class DomainError(KineticError, ValueError):
    """An input lies outside the domain where an operation is defined."""


class SubcharacteristicError(DomainError):
    """The kinetic speed does not strictly exceed the characteristic speed."""


class UnsupportedError(KineticError, NotImplementedError):
    """The operation is not available for the requested model or order."""


class NumericalError(KineticError, ArithmeticError):
    """A local linear system could not be solved."""


class ConfigError(KineticError):
    """A case description is incomplete or inconsistent."""
