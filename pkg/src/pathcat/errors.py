"""Exception hierarchy shared by all pathcat modules."""


class PathcatError(Exception):
    """Base class for all pathcat errors."""


class SourceRangeMismatch(PathcatError):
    """Composition attempted where source(mu) != range(nu)."""


class NotAPrefix(PathcatError):
    """factor_out requested for a non-prefix."""


class NotACycleCandidate(PathcatError):
    """entrance_witness requires r(mu)=r(nu), s(mu)=s(nu), mu != nu."""


class MalformedElement(PathcatError):
    """Groupoid element fields violate the invariants."""


class NonComposable(PathcatError):
    """Groupoid multiplication with s(g) != r(h)."""


class InsufficientResolution(PathcatError):
    """A symbolic point does not carry enough resolution for the query."""


class ResourceLimit(PathcatError):
    """An enumeration or search exceeded its configured budget."""


class LevelOverflow(PathcatError):
    """K0 push requested outside the allowed level range."""


class InvalidCF(PathcatError):
    """Continued-fraction stream violates its validity condition."""


class NegativeMeasure(PathcatError):
    """A certified comparison produced a negative measure value."""


class BadCuts(PathcatError):
    """Telescoping cut points are not strictly increasing / in range."""


class RefinementMismatch(PathcatError):
    """A cell was neither contained in nor disjoint from a set it must refine."""
