"""Exception types shared across the package."""


class LrdError(Exception):
    """Base class for package-specific failures."""


class FormatError(LrdError):
    """A file (tensor container, filter bank, image) is malformed."""


class NumericalError(LrdError):
    """A solve produced non-finite values.

    Carries enough context (mode / slice / sweep) to locate the failing
    subproblem.
    """

    def __init__(self, message, mode=None, slice_index=None, sweep=None):
        super().__init__(message)
        self.mode = mode
        self.slice_index = slice_index
        self.sweep = sweep
