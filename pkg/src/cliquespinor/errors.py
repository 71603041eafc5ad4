"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input file; message carries the offending line number."""


class ContractViolation(ValueError):
    """A documented precondition of an operation does not hold."""


class ResourceLimit(RuntimeError):
    """A configurable size or output cap was exceeded."""
