class InvalidArgument(ValueError):
    pass


class NotConnected(ValueError):
    pass


class DegenerateContour(ValueError):
    """The closed contour is a single digital straight segment."""


class CheckViolation(AssertionError):
    """A proven inequality failed on a concrete instance."""

    def __init__(self, check, detail, m=None):
        self.check = check
        self.detail = detail
        self.m = m
        where = f" at m={m}" if m is not None else ""
        super().__init__(f"check '{check}' failed{where}: {detail}")
