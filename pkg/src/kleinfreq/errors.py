"""Exception hierarchy shared across the package."""


class KleinFreqError(Exception):
    """Base class for all package-specific errors."""


class DegenerateSegmentError(KleinFreqError, ValueError):
    """A lattice segment with coincident endpoints."""


class InvalidPolygonError(KleinFreqError, ValueError):
    """A polygon that is self-intersecting, non-convex, or degenerate."""


class InvalidFaceError(KleinFreqError, ValueError):
    """A lattice face violating one of its construction invariants."""


class InvalidMapError(KleinFreqError, ValueError):
    """A matrix that is not unimodular."""


class SingularityError(KleinFreqError, ValueError):
    """Density evaluated on its singular locus."""


class QuadratureBudgetError(KleinFreqError, RuntimeError):
    """Requested tolerance not reached within the evaluation budget.

    Carries the best estimate obtained so far in ``estimate``.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class UnboundedRegionError(KleinFreqError, ValueError):
    """A lattice enumeration region that is not bounded."""


class EnumerationBudgetError(KleinFreqError, RuntimeError):
    """Lattice enumeration would exceed the configured cell budget."""


class InsufficientDepthError(KleinFreqError, ValueError):
    """Too few lattice points enumerated to build a 3D hull."""


class UnsupportedFaceError(KleinFreqError, ValueError):
    """Operation not available for this face (e.g. exact path at distance >= 2)."""


class ZeroAcceptanceError(KleinFreqError, RuntimeError):
    """Monte-Carlo run accepted no samples."""


class ProtectedSearchError(KleinFreqError, RuntimeError):
    """Protected-point ring search did not reach its termination certificate."""


class InvariantViolationError(KleinFreqError, RuntimeError):
    """A runtime self-check (catalog consistency, sign assertion) failed."""
