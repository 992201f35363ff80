"""Exception types shared by the library and the command line."""


class WreathkitError(Exception):
    pass


class ShapeError(WreathkitError, ValueError):
    """Domain/codomain words or matrix shapes do not fit together."""


class ValidationError(WreathkitError):
    """An operation refused its input because a law check failed.

    The failing report is kept on ``.report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FibrationError(WreathkitError, ValueError):
    pass


class SearchSpaceError(WreathkitError):
    pass


class BundleError(WreathkitError, ValueError):
    pass
