"""Exception types raised by the numerical routines."""


class MatsuvdwError(Exception):
    """Base class for all library errors."""


class InputError(MatsuvdwError, ValueError):
    """Malformed or physically invalid input."""


class NumericalError(MatsuvdwError, ArithmeticError):
    """A computation could not be completed to the requested accuracy."""


class ConvergenceError(NumericalError):
    """Truncated sum or quadrature failed to reach its tolerance."""


class CouplingTooStrongError(NumericalError):
    """ln(1 - alpha_a*alpha_b*psi^2) has a non-positive argument on the grid."""


class ResonanceError(NumericalError):
    """A perturbation-theory denominator vanishes with nonzero weight.

    Attributes
    ----------
    quadruple : tuple of int
        Offending (m, n, k, l) indices.
    """

    def __init__(self, quadruple, message=None):
        self.quadruple = tuple(int(i) for i in quadruple)
        m, n, k, l = self.quadruple
        if message is None:
            message = (f"resonant denominator E_m+E_k-E_n-E_l = 0 at "
                       f"(m, n, k, l) = ({m}, {n}, {k}, {l})")
        super().__init__(message)


class TrackingError(NumericalError):
    """Eigenvalues of the coupled Hamiltonian cannot be matched to product states."""
