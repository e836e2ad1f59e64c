"""Exception hierarchy shared by all ellipvi modules."""


class EllipviError(Exception):
    """Base class for all library errors."""


class PoleError(EllipviError):
    """Argument sits on (or within tolerance of) a pole."""


class DomainError(EllipviError):
    """Point lies outside the validity region of a series or map."""


class StripError(EllipviError):
    """Fourier series of the elliptic function is invalid at this argument."""


class LatticePoleError(PoleError):
    """Argument is too close to a lattice point of the Weierstrass function."""


class CaseError(EllipviError):
    """Requested expansion case is inconsistent with the equation weights."""


class ResonanceError(EllipviError):
    """A series exponent is too close to zero for stable coefficient division."""


class ConvergenceWarning(UserWarning):
    """Top-degree series coefficients are not decaying at the test radius."""


class RangeError(EllipviError):
    """Path parameter outside the admissible range of the chosen case."""


class GuardError(EllipviError):
    """Parameter combination excluded by an explicit guard (e.g. nu1 = 0)."""


class GammaPoleError(PoleError):
    """A Gamma factor of a connection matrix is evaluated at a pole."""


class DegenerateError(EllipviError):
    """Degenerate input (vanishing denominator / non-invertible data)."""


class ZeroSigmaError(DegenerateError):
    """sigma = 0 is outside the supported generic machinery."""


class DenominatorError(DegenerateError):
    """A structural denominator vanishes outside any covered limit case."""


class ConsistencyError(EllipviError):
    """Cross-check between two formulations failed beyond tolerance."""


class SingularArgumentError(EllipviError):
    """y coincides with one of 0, 1, x where the equation is singular."""


class PoleEncountered(EllipviError):
    """ODE integration approached a movable pole; carries the location."""

    def __init__(self, message, x=None, y=None):
        super().__init__(message)
        self.x = x
        self.y = y


class StepUnderflow(EllipviError):
    """Adaptive integrator step size collapsed below the minimum."""


class FitDegenerate(EllipviError):
    """Trajectory tail is not power-law shaped (oscillatory regime)."""
