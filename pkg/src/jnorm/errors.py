"""Exception types raised by jnorm."""


class JNormError(ValueError):
    pass


class DimensionError(JNormError):
    """Operands have incompatible lengths or block sizes."""


class PreconditionError(JNormError):
    pass


class RegimeError(JNormError):
    """Operation requested for the wrong side of the sum-zero dichotomy."""


class OracleScopeError(JNormError):
    """Brute-force enumeration requested beyond its configured cap."""
