"""Exception hierarchy shared by all rtlens modules."""


class RTLensError(Exception):
    """Base class for every error raised by rtlens."""


class DimensionError(RTLensError, ValueError):
    pass


class OrderMismatchError(RTLensError, ValueError):
    """Two cyclotomic numbers of different orders were combined."""


class InvalidAutomorphismError(RTLensError, ValueError):
    pass


class InvalidOrderError(RTLensError, ValueError):
    """The root-of-unity order is not admissible for the chosen algebra."""


class DegenerateOrderError(RTLensError, ValueError):
    """The order is admissible but rho lies on an alcove wall mod N.

    In that case Q(0) vanishes and every quantity normalized by Q(0)
    (quantum dimensions, Sigma, F) is undefined.
    """


class InvalidInputError(RTLensError, ValueError):
    pass


class CapacityError(RTLensError):
    """A requested enumeration exceeds the configured state budget."""


class GroupTooLargeError(CapacityError):
    pass
