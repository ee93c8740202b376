"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or inconsistent input (unknown node, bad palette, ...)."""


class UnsupportedError(ValueError):
    """Operation not defined for the given input (e.g. inner/outer on a disconnected graph)."""


class ResourceLimitError(RuntimeError):
    """A configured size guard was exceeded."""


class StructuralError(RuntimeError):
    """A poset violates a structural assumption an operation relies on."""
