"""Exceptions raised by the map laboratory."""


class MapError(ValueError):
    """Malformed map data or an input outside an operation's domain."""


class ConstructionError(AssertionError):
    """A structural self-check failed (closure, dividing line, decomposition)."""
