from typing import Any, Dict, Optional


class E6Error(Exception):
    """Base class for every error raised by the library."""

    def __init__(self, message: str, context: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.context: Dict[str, Any] = dict(context or {})


class InconsistentTableError(E6Error):
    """Structure constants failed to propagate or to match the ad-matrix check."""


class NotInTitsGroupError(E6Error):
    """A matrix does not permute root spaces up to sign, or a sign pattern is outside H."""


class InvalidRootIndexError(E6Error, ValueError):
    """Root index outside 1..36 or an unparsable word."""


class FieldError(E6Error):
    """Finite field construction or root-of-unity request failed."""


class NotInCentralizerError(E6Error):
    """A Weyl part outside C_W(w) was passed to a normalizer criterion."""


class VerificationError(E6Error):
    """An asserted relation does not hold."""


class ResourceCapExceeded(E6Error):
    """A configured size limit would be exceeded."""

    def __init__(self, what: str, limit: int, requested: int, context: Optional[Dict[str, Any]] = None):
        super().__init__(f"{what}: requested {requested} exceeds limit {limit}", context)
        self.what = what
        self.limit = limit
        self.requested = requested
