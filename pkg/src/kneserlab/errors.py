"""Exception types shared across the package."""


class KneserLabError(Exception):
    """Base class for all package errors."""


class GroupMismatchError(KneserLabError, TypeError):
    """An element or expression was used with the wrong group."""


class UnsupportedQueryError(KneserLabError):
    """The requested query is not decidable for this expression.

    Raised e.g. when symbolic membership is asked of a product-set node,
    which is only materializable over windows.
    """


class ResourceLimitError(KneserLabError):
    """An enumeration or scan would exceed the configured size budget."""


class PreconditionError(KneserLabError, ValueError):
    """An operation's documented precondition was violated."""


class NotFoundError(KneserLabError):
    """A bounded search exhausted its range without finding a witness."""
