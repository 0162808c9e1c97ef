"""Exception types raised across the package.

Every exception derives from :class:`DarkportError` so callers can catch the
package's failures with a single except clause while still being able to
distinguish bad inputs from degenerate data or diverging quantities.
"""


class DarkportError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DarkportError, ValueError):
    """An input value lies outside the physically meaningful domain.

    Examples: a quadrature variance below the vacuum value, a negative
    photon number, or a signal-to-noise ratio too small to define a
    resolvable feature width.
    """


class NoSuperResolvedFeatureError(DomainError):
    """The requested feature width is undefined at this signal-to-noise ratio.

    The central parity feature only drops to half its peak value when the
    coherent signal can push the dark-port displacement past the half-max
    point; below that threshold there is no full width to report.
    """


class DegenerateEnsembleError(DarkportError, ValueError):
    """An ensemble of samples is too small or too collapsed to estimate from."""


class SensitivityDivergenceError(DarkportError, ValueError):
    """A sensitivity evaluation was requested where the slope vanishes.

    Phase sensitivity is error divided by slope; at stationary points of the
    response curve the slope is zero and the sensitivity has no finite value.
    """


class FitFailureError(DarkportError, RuntimeError):
    """A model fit did not converge or the data cannot constrain the model."""


class ConfigError(DarkportError, ValueError):
    """An experiment configuration is inconsistent or incomplete."""
