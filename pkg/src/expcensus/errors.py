"""Exception hierarchy.

Every computational failure raised by the package derives from
:class:`ExpCensusError`; the CLI maps these to exit status 1 and prints the
class name on stderr.
"""


class ExpCensusError(Exception):
    """Base class for all computational errors."""


class TowerOverflow(ExpCensusError):
    """Depth or radius beyond the representable range; shrink r or m."""


class ZeroParameter(ExpCensusError):
    """The parameter lambda = 0 was supplied where lambda != 0 is required."""


class NonPositive(ExpCensusError):
    """A tower value (or its logarithm) would be zero or negative."""


class PrecisionLoss(ExpCensusError):
    """Two tower values cannot be ordered or differenced at working precision."""


class InvalidModel(ExpCensusError):
    """An asymptotic model was requested outside its range of validity."""


class NonConvergence(ExpCensusError):
    """Adaptive quadrature exhausted its node budget."""


class ContourZero(ExpCensusError):
    """A zero lies on (or numerically at) the integration contour."""


class NonInteger(ExpCensusError):
    """Accumulated winding number is not close to an integer."""


class IncompleteCensus(ExpCensusError):
    """Newton census could not be certified against winding counts."""


class CensusTooLarge(ExpCensusError):
    """The branch range needed to cover the disk is beyond desk scale."""


class ConsistencyError(ExpCensusError):
    """Two independent filters that must agree did not."""
