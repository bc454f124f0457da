"""Exception hierarchy.

Every error raised by the library derives from :class:`CurveboundError`.
:class:`GuardError` marks size/feasibility guards; the CLI maps those to
exit code 2.
"""


class CurveboundError(Exception):
    """Base class for all library errors."""


class GuardError(CurveboundError):
    """An operation refused to run because an input exceeds a size guard."""


# graph construction
class GraphError(CurveboundError):
    pass


class Disconnected(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class EmptyGraph(GraphError):
    pass


class ParameterOutOfRange(GraphError):
    pass


class EmptySource(GraphError):
    pass


# transport / curvature
class MassMismatch(CurveboundError):
    pass


class SameVertex(CurveboundError):
    pass


class PowerTooLarge(GuardError):
    pass


# shells
class EmptySigma(CurveboundError):
    pass


class NonSeparating(CurveboundError):
    pass


class NoPositiveRange(CurveboundError):
    pass


# isoperimetry
class TooLarge(GuardError):
    pass


class UnknownFamily(CurveboundError):
    pass


# spectral
class TooLargeForDense(GuardError):
    pass


class EmptyRange(CurveboundError):
    pass


class EmptySide(CurveboundError):
    pass


class CountTooLarge(CurveboundError):
    pass


class IndexOutOfRange(CurveboundError):
    pass


class AlphaTooLarge(CurveboundError):
    pass


class DominanceHypothesisFails(CurveboundError):
    pass
