"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for every failure the engine raises on purpose."""


class ConfigError(EngineError):
    """Bad configuration file or invalid threshold value."""


class ParseError(EngineError):
    """Malformed record in a track log."""


class ConsistencyError(EngineError):
    """Records that are individually valid but contradict each other."""


class DataError(EngineError):
    """Rejected input value (non-finite vector, bad fps, ...)."""


class StateError(EngineError):
    """Operation called on an object in the wrong state."""
