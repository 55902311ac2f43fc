"""Exception types shared across the package."""


class RepgameError(Exception):
    """Base class for all package-specific errors."""


class InvalidSpecError(RepgameError, ValueError):
    """A network specification violates its structural constraints."""


class ConfigError(RepgameError, ValueError):
    """A run configuration is missing, unparsable, or fails validation.

    The message names the offending key path (e.g. ``params.p``) whenever
    one can be identified.
    """
