"""Exception hierarchy shared by all varjump modules."""


class VarJumpError(Exception):
    """Base class for every error raised by this package."""


class DomainError(VarJumpError, ValueError):
    """An argument lies outside the domain of the operation."""


class OracleRefusal(VarJumpError):
    """An exhaustive oracle was asked for an input too large to enumerate."""


class TailSpillError(DomainError):
    """A kernel scale is too large for the periodic domain to contain its tails."""


class AtomConstructionError(VarJumpError):
    """A profile degenerates to zero after mean subtraction."""


class GeometryError(DomainError):
    """A probe or region does not fit inside the configured domain."""


class ConfigError(VarJumpError):
    """Invalid run configuration. Carries the offending line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
