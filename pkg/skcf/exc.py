"""skcf exceptions
"""


class SkcfError(Exception):
    """Base class for all errors raised by this package
    """
    pass


class Invalid(SkcfError, ValueError):
    """Input was rejected
    """
    pass


class NotExact(Invalid):
    """An exact-only operation received approximate entries
    """
    pass


class SingularOperator(Invalid):
    """A local operator or transformation is not invertible
    """
    pass


class UnsupportedDimensions(SkcfError):
    """Requested dimensions have no finite class enumeration
    """
    pass
