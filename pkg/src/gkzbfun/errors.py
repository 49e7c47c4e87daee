class ValidationError(ValueError):
    """Input violates a standing assumption on A, beta or t."""


class GenericityError(RuntimeError):
    """Random linear sections kept failing the finite-length / agreement test."""


class SearchBoundExceeded(RuntimeError):
    """A certified search bound ran out before a witness was found."""
