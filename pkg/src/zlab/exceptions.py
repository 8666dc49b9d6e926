"""Exception types raised across zlab."""


class ZlabError(Exception):
    """Base class for all zlab errors."""


class PoleProximity(ZlabError, ValueError):
    """An exp-rational form was evaluated too close to a + b = 0."""


class NonPositiveMean(ZlabError, ValueError):
    """A mean-value constant is not positive, so its logarithm is undefined."""


class InvalidParams(ZlabError, ValueError):
    """An optimizer parameter vector does not decode to valid specs."""


class InvalidConfig(ZlabError, ValueError):
    """A parameter/config file could not be decoded.

    The message carries the offending line or field.
    """


class NearPole(ZlabError, ValueError):
    """zeta was requested within 1e-6 of s = 1."""


class DomainError(ZlabError, ValueError):
    """Evaluation point is a pole of the function requested."""


class BudgetExceeded(ZlabError, RuntimeError):
    """A quadrature would need more nodes than its configured cap."""
