"""Exception and warning types shared across the package."""


class NumericsError(RuntimeError):
    """A computation failed numerically (non-convergence, loss of definiteness)."""


class NotPositiveDefiniteError(NumericsError):
    """A Gram matrix turned out not to be positive definite.

    For a nonzero input function this signals catastrophic conditioning
    rather than a genuine rank deficiency.
    """


class ConvergenceError(NumericsError):
    """An iteration exceeded its step budget without meeting tolerance."""


class ConditioningWarning(UserWarning):
    """Emitted when a condition estimate exceeds the trust threshold."""


class RootConvergenceWarning(UserWarning):
    """Emitted when the root finder returns its best iterate unconverged."""
