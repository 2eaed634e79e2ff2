"""Lower bounds for the extremal shift quotient in the Bergman-weight space.

The quantity maximized is |<g, z g>| / ||z g||^2 over polynomials g of
degree at most N with the alpha = -1 weights.  Writing g = sum c_j z^j,

    <g, z g>   = sum_{k>=1} c_k conj(c_{k-1}) / (k+1),
    ||z g||^2  = sum_k |c_k|^2 / (k+2),

and since the numerator's coefficient matrix has nonnegative entries any
complex vector can be phase-aligned (c_k -> |c_k|) without decreasing the
quotient, so the maximum is attained at real nonnegative coefficients.
That turns the problem into the generalized symmetric eigenproblem
S c = lambda D c with bidiagonal S (off-diagonal 1/(2(k+1))) and diagonal
D (entries 1/(k+2)), solved matrix-free by shifted power iteration on
the diagonally preconditioned operator B = D^{-1/2} S D^{-1/2}.

Each computed lambda is a certified lower bound for the supremum over
the whole space; 1/lambda is correspondingly an upper bound for the
smallest possible modulus of a degree-1 approximant zero at alpha = -1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError

EIGENVALUE_TOL = 1e-12
RESIDUAL_RTOL = 1e-10
MAX_ITERATIONS = 100_000

# eigenvalues of B come in +/- pairs (zero diagonal, bipartite sign flip);
# a positive shift separates the top one for the power iteration
POWER_SHIFT = 1.0

QUOTIENT_CEILING = float(np.sqrt(2.0))


@dataclass(frozen=True)
class ExtremalResult:
    """Maximized quotient over one polynomial degree."""

    degree: int
    quotient: float
    maximizer: np.ndarray
    iterations: int
    residual: float


def _weights(n: int) -> tuple[np.ndarray, np.ndarray]:
    k = np.arange(n + 1)
    diag = 1.0 / (k + 2.0)
    off = 1.0 / (2.0 * (k[1:] + 1.0))
    return diag, off


def _apply_tridiagonal(off: np.ndarray, x: np.ndarray) -> np.ndarray:
    y = np.zeros_like(x)
    y[:-1] += off * x[1:]
    y[1:] += off * x[:-1]
    return y


def rayleigh_lower_bound(N: int, tol: float = EIGENVALUE_TOL, max_iter: int = MAX_ITERATIONS) -> ExtremalResult:
    """Maximize the shift quotient over polynomials of degree at most N.

    Parameters
    ----------
    N : int
        Trial-space degree.  N = 0 is degenerate (the numerator vanishes
        identically) and returns quotient 0.
    tol : float
        Stopping tolerance on the eigenvalue change per step.
    max_iter : int
        Iteration budget; exceeding it raises ConvergenceError.

    Returns
    -------
    ExtremalResult
        The maximizer has unit norm under the denominator weights, and
        the pencil residual ||S c - lambda D c||_inf is reported.
    """
    if N < 0:
        raise ValueError("degree must be nonnegative")
    diag, off = _weights(N)
    if N == 0:
        maximizer = np.array([1.0 / np.sqrt(diag[0])])
        return ExtremalResult(0, 0.0, maximizer, 0, 0.0)

    inv_sqrt_diag = 1.0 / np.sqrt(diag)
    # off-diagonals of B = D^{-1/2} S D^{-1/2}
    off_b = off * inv_sqrt_diag[:-1] * inv_sqrt_diag[1:]

    x = 1.0 / (1.0 + np.arange(N + 1.0))
    x /= np.linalg.norm(x)
    lam = float(x @ _apply_tridiagonal(off_b, x))

    iterations = 0
    while True:
        if iterations >= max_iter:
            raise ConvergenceError(
                f"power iteration exceeded {max_iter} steps at degree {N}"
            )
        iterations += 1
        y = _apply_tridiagonal(off_b, x) + POWER_SHIFT * x
        x = y / np.linalg.norm(y)
        bx = _apply_tridiagonal(off_b, x)
        lam_new = float(x @ bx)
        converged_value = abs(lam_new - lam) <= tol
        lam = lam_new
        if converged_value:
            c = inv_sqrt_diag * x
            pencil_residual = float(np.max(np.abs(_apply_tridiagonal(off, c) - lam * diag * c)))
            if pencil_residual <= RESIDUAL_RTOL * float(np.max(np.abs(diag * c))):
                break

    c = inv_sqrt_diag * x
    residual = float(np.max(np.abs(_apply_tridiagonal(off, c) - lam * diag * c)))
    return ExtremalResult(N, lam, c, iterations, residual)


@dataclass(frozen=True)
class SweepResult:
    """A monotone family of lower bounds over nested trial spaces."""

    entries: list[ExtremalResult]
    best_lower_bound: float
    min_zero_modulus_upper_bound: float
    crossed_one: bool


def sweep(degree_list) -> SweepResult:
    """Run the quotient maximization over an increasing list of degrees.

    Nesting of the trial spaces forces the reported values to be
    nondecreasing; the final entry is the best certified lower bound and
    its reciprocal bounds the smallest attainable approximant-zero
    modulus from above.  Whether the values have crossed 1 is recorded
    as an observation (the supremum is known to exceed 1, but no finite
    witness degree is guaranteed).
    """
    degrees = list(degree_list)
    if not degrees:
        raise ValueError("degree list must be nonempty")
    if any(b <= a for a, b in zip(degrees, degrees[1:])):
        raise ValueError("degree list must be strictly increasing")
    entries = [rayleigh_lower_bound(n) for n in degrees]
    best = entries[-1].quotient
    return SweepResult(
        entries=entries,
        best_lower_bound=best,
        min_zero_modulus_upper_bound=(float("inf") if best == 0.0 else 1.0 / best),
        crossed_one=any(e.quotient > 1.0 for e in entries),
    )
