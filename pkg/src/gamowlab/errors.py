"""Exception hierarchy.

Two families matter downstream: validation failures (bad inputs, broken
type invariants) and semigroup-domain violations (asking a decaying ket to
evolve backwards, or a growing one forwards).  The latter are physics
contracts, not plumbing, and are never silently extended.
"""


class GamowlabError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(GamowlabError, ValueError):
    """An input or constructed value violates a documented invariant."""


class AmbiguityError(ValidationError):
    """A branch choice cannot be made (threshold point, boundary sheet)."""


class PoleProximityError(ValidationError):
    """Evaluation requested too close to a pole.

    Carries the offending root in ``root``.
    """

    def __init__(self, message, root):
        super().__init__(message)
        self.root = root


class SemigroupDomainError(GamowlabError):
    """Time outside the semigroup domain of the requested evolution."""


class DeformationError(GamowlabError):
    """Contour deformation is not licensed (pole on or outside the sector)."""


class NumericsError(GamowlabError):
    """A numerical procedure failed to meet its contract.

    Covers root-finding non-convergence, quadrature oscillation budgets,
    and phase-unwrap step failures.
    """
