"""Exception types raised by harqcache."""


class InvalidParameterError(ValueError):
    """A physical or model parameter is outside its valid domain."""


class InvalidStateError(ValueError):
    """A Markov chain state is the sink or lies outside the state space."""


class InstanceTooLargeError(ValueError):
    """Exhaustive search was requested on an instance that is too big."""


class ConfigError(ValueError):
    """An experiment configuration is malformed.

    ``field`` names the offending key so the CLI can report it.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
