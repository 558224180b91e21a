"""Semantic exception hierarchy shared across the package."""


class OptosteerError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(OptosteerError):
    """Malformed input: wrong shape, non-finite entries, out-of-range scalars."""


class NonPhysicalState(OptosteerError):
    """Covariance matrix violates a positivity requirement of a Gaussian state."""


class UnsupportedForm(OptosteerError):
    """Covariance matrix is outside the standard form a closed formula needs."""


class UnsupportedConfiguration(OptosteerError):
    """Parameter combination outside the validity of the model reduction."""


class IntegrationError(OptosteerError):
    """Fixed-step integrator failed its step-halving convergence check."""


class ConfigError(OptosteerError):
    """Invalid run configuration (bad document, unknown/missing keys, bad values).

    Collects every problem found so a single run reports all of them; each
    entry carries its key path, e.g. ``[reduced] c1: must be >= 0``.
    """

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))
