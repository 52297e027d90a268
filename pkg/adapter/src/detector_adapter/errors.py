"""Exception types the adapter raises on purpose."""


class AdapterError(Exception):
    """Base class for every failure the adapter raises on purpose."""


class ConfigError(AdapterError):
    """Invalid configuration value (unknown model or tracker, bad fps, ...)."""


class ModelError(AdapterError):
    """A known model failed to load from its backing files."""
