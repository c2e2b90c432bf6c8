"""Exception types shared across the package."""


class LieSbeError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LieSbeError):
    """Malformed or out-of-contract input (bad JSON, bad indices, unknown name)."""


class PreconditionError(LieSbeError):
    """A documented precondition of an operation does not hold."""


class DivergentFamily(LieSbeError):
    """A scaling family has entries with positive powers of t."""

    def __init__(self, entries):
        self.entries = list(entries)
        detail = ", ".join(
            "[{},{}]->{} at t^{} (coeff {})".format(i, j, k, e, c)
            for (i, j, k, e, c) in self.entries
        )
        super().__init__("divergent family: " + detail)
