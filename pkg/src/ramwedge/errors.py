"""Exception types shared across the package."""


class FieldMismatchError(ValueError):
    """Raised when scalars from different base fields are combined."""


class IndeterminateValuationError(ArithmeticError):
    """Raised when a truncated series is zero to its stored precision,
    so its valuation cannot be determined."""


class PrecisionExhaustedError(ArithmeticError):
    """Raised when a lattice reduction decision would depend on
    coefficients too close to the working precision bound."""


class SchemaError(ValueError):
    """Raised when an input file does not match the expected JSON schema."""
