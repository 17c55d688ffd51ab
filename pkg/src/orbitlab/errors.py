"""Exception types shared across the package."""


class OrbitlabError(Exception):
    """Base class for all orbitlab-specific errors."""


class DimensionMismatch(OrbitlabError):
    """Operands live in different ambient dimensions."""


class CapExceeded(OrbitlabError):
    """An enumeration grew past its element cap."""

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class NotFoundWithinCap(OrbitlabError):
    """A search exhausted its cap without finding the target."""


class DegenerateLattice(OrbitlabError):
    """Lattice basis vectors are linearly dependent."""


class InconsistentCosets(OrbitlabError):
    """Coset data contradicts the claimed group decomposition."""


class TruncationError(OrbitlabError):
    """A truncated computational window clipped the result."""


class ConvergenceError(OrbitlabError):
    """Grid refinement failed to certify the requested tolerance."""


class UnsupportedMethod(OrbitlabError):
    """The requested method is not available for this space."""


class InsufficientSamples(OrbitlabError):
    """Monte Carlo sample count below the accepted minimum."""


class NonCommutingGenerators(OrbitlabError):
    """Classifier input generators do not pairwise commute."""


class WrongLatticeRank(OrbitlabError):
    """Classifier input translations do not span a codimension-1 subspace."""


class UnfixedLatticeSpan(OrbitlabError):
    """Some orthogonal part moves the translation subspace."""
