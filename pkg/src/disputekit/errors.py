class DisputekitError(Exception):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class DataFormatError(DisputekitError):
    """Malformed or out-of-domain input data."""


class NotFoundError(DisputekitError):
    """Unknown model/dataset/job identifier."""
