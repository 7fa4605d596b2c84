"""Exception types shared across the package.

Configuration errors (bad user input, violated preconditions) derive from
ConfigError; failures of numerical procedures derive from NumericalError.
The CLI maps the former to exit code 2 and the latter to exit code 3.
"""


class FluxRingError(Exception):
    """Base class for all package-specific errors."""


class ConfigError(FluxRingError, ValueError):
    """Invalid configuration or argument; the message names the field."""


class NumericalError(FluxRingError, RuntimeError):
    """A numerical procedure failed or left its validity range."""


class NonPositiveSites(ConfigError):
    pass


class NonPositiveHopping(ConfigError):
    pass


class NonFiniteField(ConfigError):
    pass


class OrderTooLarge(ConfigError):
    pass


class IndexOutOfRange(ConfigError):
    pass


class DegenerateWidth(ConfigError):
    pass


class SiteOutOfRange(ConfigError):
    pass


class HorizonTooShort(ConfigError):
    pass


class TargetOutOfRange(ConfigError):
    pass


class AsymmetricState(ConfigError):
    pass


class QuadratureFailure(NumericalError):
    pass


class StepTooLarge(NumericalError):
    pass


class UnitarityLoss(NumericalError):
    pass


class NoBracket(NumericalError):
    pass


class NonMonotoneWarning(UserWarning):
    """Average fidelity was not monotone across a threshold bracket."""
