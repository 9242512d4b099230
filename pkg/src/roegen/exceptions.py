"""Exception hierarchy shared by every roegen module."""


class RoegenError(Exception):
    """Base class for all errors raised by roegen."""


class DomainError(RoegenError, ValueError):
    """A state lies outside the domain of the equation of state (e.g. Q <= b)."""


class ArgumentError(RoegenError, ValueError):
    """An argument violates a documented precondition."""


class UnsupportedModelError(RoegenError, ValueError):
    """The requested operation does not exist for the active model."""


class ConvergenceError(RoegenError, RuntimeError):
    """An iterative solver failed to converge.

    ``residual`` holds the last residual seen, when one is available.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class SupercriticalError(RoegenError, ValueError):
    """A coexistence computation was requested at or above the critical stability."""


class NoCoexistenceError(RoegenError, ValueError):
    """The isotherm has no three-root price window."""


class DegeneratePointError(RoegenError, ValueError):
    """The coexisting branches have merged (critical degeneracy)."""


class PhaseRangeError(RoegenError, ValueError):
    """A point lies outside the stability range covered by a phase diagram."""

    def __init__(self, message, interval=None, index=None):
        super().__init__(message)
        self.interval = interval
        self.index = index


class DictionaryLookupError(RoegenError, KeyError):
    """Unknown symbol in the thermodynamic-economic dictionary."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class BuildError(RoegenError):
    """Phase-diagram assembly failed; ``stage`` names the failing step."""

    def __init__(self, message, stage):
        super().__init__(message)
        self.stage = stage


class ConfigError(RoegenError, ValueError):
    """Malformed, unknown or invalid configuration."""


class RenderError(RoegenError):
    """The diagram cannot be rendered."""
