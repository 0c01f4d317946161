"""Exception types raised by linespace."""


class LinespaceError(Exception):
    """Base class for all library errors."""


class DomainError(LinespaceError, ValueError):
    """A point lies outside the coordinate chart (e.g. |xi| >= 1 on TH^2)."""


class SpaceMismatchError(LinespaceError, ValueError):
    """An operation defined for one space was called with the other."""


class DegenerateFrameError(LinespaceError, ArithmeticError):
    """The adapted null frame of a congruence degenerates at the sample point."""


class UmbilicPointError(LinespaceError, ArithmeticError):
    """The shear slope vanishes, so curvature formulas dividing by it are undefined."""


class NotLagrangianError(LinespaceError, ValueError):
    """A section expected to be Lagrangian fails the Lagrangian residual check."""


class FlatPointError(LinespaceError, ValueError):
    """Weierstrass data has a vanishing third derivative (no immersion)."""


class DomainExitError(LinespaceError):
    """A geodesic left the chart during integration.

    The partial trajectory (up to the last valid state) is attached.
    """

    def __init__(self, message, trajectory):
        super().__init__(message)
        self.trajectory = trajectory
