"""Exception hierarchy shared across the package.

Three top-level families matter to callers (and to the CLI's exit codes):
bad input data (``ValidationError``), enumeration caps (``BudgetExceeded``),
and violations of facts that are supposed to be theorems
(``InternalInvariantError``, which always indicates a bug, never a data
condition).
"""


class MedianForgeError(Exception):
    pass


class ValidationError(MedianForgeError):
    """Input data or arguments violate a documented precondition."""


class BudgetExceeded(MedianForgeError):
    """An enumeration crossed a configured cap before finishing."""


class InternalInvariantError(MedianForgeError):
    """A proven invariant failed at runtime; file a bug."""


# graph_core
class ParseError(ValidationError):
    pass


class NotSimple(ValidationError):
    pass


class Disconnected(ValidationError):
    pass


class UnknownVertex(ValidationError):
    pass


class EmptyInput(ValidationError):
    pass


class EqualVertices(ValidationError):
    pass


# cuts_pocset
class GraphMismatch(ValidationError):
    pass


class NotMember(ValidationError):
    pass


class TrivialInput(ValidationError):
    pass


# dual_median
class NotAntichain(ValidationError):
    pass


class Inconsistent(ValidationError):
    pass


class Incomplete(ValidationError):
    pass


class InvalidOrientation(ValidationError):
    pass


class PocsetMismatch(ValidationError):
    pass


# median_geometry
class NotMedianGraph(ValidationError):
    pass


class NotHalfSpace(ValidationError):
    pass


class NotConvex(ValidationError):
    pass


class NotDisjoint(ValidationError):
    pass


class PairwiseEmpty(ValidationError):
    pass


class RoundtripFailure(InternalInvariantError):
    pass


# treeify
class NestednessViolation(InternalInvariantError):
    pass


# ends_lab
class BadParams(ValidationError):
    pass


class RadiusOrder(ValidationError):
    pass


class NoRay(ValidationError):
    pass


class MapDomain(ValidationError):
    pass
