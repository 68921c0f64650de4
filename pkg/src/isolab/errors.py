"""Exception hierarchy shared by every isolab module."""


class IsolabError(ValueError):
    """Base class for all isolab errors."""


class InsufficientData(IsolabError):
    pass


class DuplicateNode(IsolabError):
    pass


class NotMSequence(IsolabError):
    pass


class VerificationFailed(IsolabError):
    pass


class DimensionMismatch(IsolabError):
    pass


class CommutatorNonzero(IsolabError):
    pass


class LengthMismatch(IsolabError):
    pass


class BoundExceeded(IsolabError):
    pass


class UnsupportedParameter(IsolabError):
    pass
