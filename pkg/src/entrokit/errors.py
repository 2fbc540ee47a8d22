"""Exception hierarchy for the toolkit.

Every failure mode callers are expected to branch on gets its own class;
messages always name the violated constraint with actual values filled in.
"""


class EntrokitError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(EntrokitError, ValueError):
    """Distribution or spec construction rejected (bad parameter value)."""


class DomainError(EntrokitError, ValueError):
    """Special-function argument outside the supported domain (x <= 0 or non-finite)."""


class FamilyMismatchError(EntrokitError, TypeError):
    """Continuous operation applied to a discrete family or vice versa."""


class UnboundedDensityError(EntrokitError):
    """Density has no finite supremum, so the modified entropy does not exist."""


class ValidityDomainError(EntrokitError):
    """Entropy order parameters violate the finiteness domain (e.g. alpha*(mu-1) <= -1).

    The message carries the violated inequality with the offending values.
    """


class UnsupportedFamilyError(EntrokitError):
    """No closed form exists for this measure/family combination."""


class NonConvergenceError(EntrokitError):
    """Adaptive quadrature exhausted its subdivision budget above tolerance."""


class SeriesBudgetError(EntrokitError):
    """Series summation hit max_terms before the tail bound certified."""


class NotPSDError(EntrokitError):
    """Matrix failed the positive-semidefiniteness check (negative pivot)."""


class SingularCovarianceError(EntrokitError):
    """Covariance determinant is zero; Gaussian entropy is -inf and not representable."""
