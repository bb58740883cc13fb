"""Exception hierarchy shared by every polyzeta module."""


class PolyzetaError(Exception):
    """Base class for all errors raised by polyzeta."""


class ArgumentError(PolyzetaError, ValueError):
    """An argument violates a documented precondition."""


class PoleError(ArgumentError):
    pass


class DomainError(ArgumentError):
    pass


class BranchError(DomainError):
    """Evaluation point lies outside the principal branch of a formula."""


class DegenerateError(ArgumentError):
    """A closed form has a vanishing denominator for the given parameters."""


class EmptyRegionError(ArgumentError):
    pass


class NonMonotoneError(PolyzetaError):
    """The energy contour is not single-valued on the integration range."""


class GridError(ArgumentError):
    pass


class MissedZeroError(PolyzetaError):
    """A zero scan disagrees with the smooth count; the step is too coarse."""


class AmbiguousError(PolyzetaError):
    """Requested energy sits on top of a zero within tolerance."""


class MissedLevelError(PolyzetaError):
    pass
