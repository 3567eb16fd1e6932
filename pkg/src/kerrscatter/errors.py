"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


class PreconditionError(ValueError):
    """A structural precondition (e.g. a resonance condition) does not hold."""


class IntegrationError(RuntimeError):
    """The field integrator could not reach the end of the slab."""

    def __init__(self, message, x_reached):
        super().__init__(f"{message} (reached x = {x_reached!r})")
        self.x_reached = x_reached


class SpectralSingularityError(ArithmeticError):
    """A transmission denominator vanishes at real k."""
