"""Exception hierarchy shared by every module of the package."""


class MedianSWFError(Exception):
    """Base class for all package errors."""


class GroundTooLarge(MedianSWFError):
    """Raised when an exhaustive procedure is requested on too many alternatives."""


class EmptyAgenda(MedianSWFError):
    """Raised when an agenda (subset of alternatives) is empty."""


class ParseError(MedianSWFError, ValueError):
    """Raised on malformed preorder, profile or rule-spec text."""


class ParameterError(MedianSWFError, ValueError):
    """Raised when a rule constructor receives invalid parameters."""


class IllFormedFamily(MedianSWFError):
    """Raised when a filter family selects bipartitions whose meet does not exist."""


class FamilyUndefined(MedianSWFError):
    """Raised when an agenda-contingent family is requested for a rule that cannot induce one."""


class InternalError(MedianSWFError):
    """Raised when a structural invariant that must always hold is violated."""
