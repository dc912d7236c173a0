"""Exception hierarchy."""


class RelayNetError(Exception):
    """Base class for all errors raised by relaynet."""


class DimensionError(RelayNetError, ValueError):
    """Vector lengths do not agree."""


class DegenerateChannelError(RelayNetError, ValueError):
    """A channel vector that must be nonzero is the zero vector."""


class ModelError(RelayNetError, ValueError):
    """Invalid network-model parameters (e.g. fewer than two antennas)."""


class ConfigError(RelayNetError, ValueError):
    """Invalid harness configuration. ``field`` names the offending field."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


class InfeasibleError(RelayNetError, ValueError):
    """A positive rate was requested through a path with zero gain."""


class ChannelFileError(RelayNetError, ValueError):
    """Malformed channel realization document."""
