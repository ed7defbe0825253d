"""Exception types shared across the package."""


class FlabError(ValueError):
    """Base class for all package-specific errors."""


class DomainError(FlabError):
    """Argument outside the domain a function is defined on."""


class RangeError(FlabError):
    """Requested value outside the attainable range."""


class UnsupportedError(FlabError):
    """Operation not supported for this input (e.g. non-monotone table)."""


class ResolutionError(FlabError):
    """Grid resolution too coarse for the requested construction."""


class PreconditionError(FlabError):
    """A stated hypothesis of a lemma/operation does not hold for the input."""


class CoveringError(FlabError):
    """A ball family fails to cover the set it is supposed to cover."""
