"""Exception types raised across the package."""


class WVCError(Exception):
    """Base class for all package errors."""


# graph construction / mutation
class GraphError(WVCError, ValueError):
    pass


class DuplicateEdge(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class IdOutOfRange(GraphError):
    pass


class VertexNotAlive(GraphError):
    pass


class OutOfOrderRestore(GraphError):
    pass


# cover analysis
class NotAVertexCover(WVCError, ValueError):
    pass


class NotGoodCover(WVCError, ValueError):
    pass


# solvers
class InvalidColoring(WVCError, ValueError):
    pass


class TooLarge(WVCError, ValueError):
    pass


class ComponentTooLarge(TooLarge):
    pass


class NotAComponent(WVCError, ValueError):
    pass


class NonSubcubic(WVCError, ValueError):
    pass


class FPropertyViolation(WVCError):
    """A triangle component of G[U] has no witness pair (strict mode)."""


class StuckState(WVCError, RuntimeError):
    """No rule applies. Indicates a bug: the rule list is exhaustive."""


class WitnessNotFound(WVCError, RuntimeError):
    """A branching rule could not find the vertices its correctness argument guarantees."""


class UnknownRule(WVCError, KeyError):
    pass


class GenFailure(WVCError, RuntimeError):
    pass


class WgrParseError(WVCError, ValueError):
    pass
