"""Linear solvers for the normal equations.

Two routes are provided: a Cholesky factorization for any Hermitian
positive-definite system, and a Levinson recursion exploiting the
Toeplitz structure of unweighted-space moment matrices.  Both apply one
step of iterative refinement; the Levinson route falls back to Cholesky
on a (theoretically impossible, numerically conceivable) breakdown of
the prediction error.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import ConditioningWarning, NotPositiveDefiniteError
from .gram import STRUCTURE_TOEPLITZ, GramSystem

SOLVER_CHOLESKY = "cholesky"
SOLVER_LEVINSON = "levinson"

# condition estimate above which a precision-loss warning is emitted
COND_WARN_THRESHOLD = 1e6

# Levinson prediction error below this fraction of the leading moment
# triggers the Cholesky fallback
LEVINSON_BREAKDOWN_TOL = 1e-14


@dataclass(frozen=True)
class SolveReport:
    """Solution of one normal-equation system with quality diagnostics."""

    solution: np.ndarray
    solver: str
    residual_inf: float
    cond_estimate: float
    refined: bool
    fallback: str | None = None


def condition_estimate(system: GramSystem) -> float:
    """Two-norm condition number of the Hermitian moment matrix.

    Computed from the extremal eigenvalues; returns inf when the matrix
    is numerically singular or indefinite.
    """
    ev = np.linalg.eigvalsh(system.matrix)
    if ev[0] <= 0.0:
        return float("inf")
    return float(ev[-1] / ev[0])


def _warn_if_ill_conditioned(kappa: float) -> None:
    if kappa > COND_WARN_THRESHOLD:
        lost = math.log10(kappa)
        warnings.warn(
            f"condition estimate {kappa:.3e}: roughly {lost:.0f} digits lost"
            + ("; results are not trustworthy" if kappa > 1e12 else ""),
            ConditioningWarning,
            stacklevel=3,
        )


def _cholesky_factor(matrix: np.ndarray) -> np.ndarray:
    try:
        return np.linalg.cholesky(matrix)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError(
            "moment matrix is not positive definite; the input function is "
            "zero or the system is beyond double-precision conditioning"
        ) from exc


def _cholesky_apply(lower: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    y = solve_triangular(lower, rhs, lower=True)
    return solve_triangular(lower.conj().T, y, lower=False)


def cholesky_solve(system: GramSystem, rhs: np.ndarray | None = None) -> SolveReport:
    """Solve M x = rhs (defaulting to the system's own right-hand side).

    One step of residual-based iterative refinement is always applied.
    """
    b = system.rhs if rhs is None else np.asarray(rhs, dtype=complex)
    lower = _cholesky_factor(system.matrix)
    x = _cholesky_apply(lower, b)
    residual = b - system.matrix @ x
    x = x + _cholesky_apply(lower, residual)
    residual_inf = float(np.max(np.abs(b - system.matrix @ x)))
    kappa = condition_estimate(system)
    _warn_if_ill_conditioned(kappa)
    return SolveReport(x, SOLVER_CHOLESKY, residual_inf, kappa, refined=True)


class _LevinsonBreakdown(Exception):
    pass


def _levinson_pass(t: np.ndarray, b: np.ndarray, collect=None):
    """Levinson recursion for a Hermitian Toeplitz system given its first column.

    Runs through increasing leading subsystems; ``collect(m, x_m)`` is
    called with the solution of each one, which the distance-profile and
    telescoping paths use to harvest every prefix in a single sweep.
    Raises _LevinsonBreakdown when the running prediction error collapses
    relative to the leading moment.
    """
    n = len(t)
    t0 = t[0]
    if abs(t0) == 0.0:
        raise _LevinsonBreakdown("zero leading moment")
    x = np.zeros(n, dtype=complex)
    fwd = np.zeros(n, dtype=complex)
    bwd = np.zeros(n, dtype=complex)
    fwd[0] = 1.0 / t0
    bwd[0] = 1.0 / t0
    x[0] = b[0] / t0
    pred_error = t0
    if collect is not None:
        collect(0, x[:1])
    for m in range(1, n):
        eps_f = np.dot(t[m:0:-1], fwd[:m])
        eps_b = np.dot(np.conj(t[1 : m + 1]), bwd[:m])
        denom = 1.0 - eps_f * eps_b
        pred_error = pred_error * denom
        if abs(pred_error) < LEVINSON_BREAKDOWN_TOL * abs(t0):
            raise _LevinsonBreakdown(
                f"prediction error collapsed at step {m} "
                f"({abs(pred_error):.3e} vs leading moment {abs(t0):.3e})"
            )
        f_ext = np.concatenate([fwd[:m], [0.0]])
        b_ext = np.concatenate([[0.0], bwd[:m]])
        fwd[: m + 1] = (f_ext - eps_f * b_ext) / denom
        bwd[: m + 1] = (b_ext - eps_b * f_ext) / denom
        eta = np.dot(t[m:0:-1], x[:m])
        x[m] = 0.0
        x[: m + 1] += (b[m] - eta) * bwd[: m + 1]
        if collect is not None:
            collect(m, x[: m + 1])
    return x


def levinson_solve(system: GramSystem, rhs: np.ndarray | None = None) -> SolveReport:
    """Solve a Toeplitz-structured system by the Levinson recursion.

    Rejects systems whose structure tag is not toeplitz.  On breakdown
    the Cholesky route is used instead and the report says so.
    """
    if system.structure != STRUCTURE_TOEPLITZ:
        raise ValueError(
            f"Levinson solver requires a toeplitz-structured system, got {system.structure!r}"
        )
    b = system.rhs if rhs is None else np.asarray(rhs, dtype=complex)
    t = system.matrix[:, 0].copy()
    try:
        x = _levinson_pass(t, b)
        residual = b - system.matrix @ x
        x = x + _levinson_pass(t, residual)
    except _LevinsonBreakdown as exc:
        report = cholesky_solve(system, rhs)
        return SolveReport(
            report.solution,
            report.solver,
            report.residual_inf,
            report.cond_estimate,
            report.refined,
            fallback=f"levinson breakdown: {exc}",
        )
    residual_inf = float(np.max(np.abs(b - system.matrix @ x)))
    kappa = condition_estimate(system)
    _warn_if_ill_conditioned(kappa)
    return SolveReport(x, SOLVER_LEVINSON, residual_inf, kappa, refined=True)


def solve_system(system: GramSystem, rhs: np.ndarray | None = None, method: str = "auto") -> SolveReport:
    """Dispatch to the structure-appropriate solver.

    ``method`` is "auto", "cholesky" or "levinson"; auto picks Levinson
    exactly when the structure tag allows it.
    """
    if method == "auto":
        method = SOLVER_LEVINSON if system.structure == STRUCTURE_TOEPLITZ else SOLVER_CHOLESKY
    if method == SOLVER_LEVINSON:
        return levinson_solve(system, rhs)
    if method == SOLVER_CHOLESKY:
        return cholesky_solve(system, rhs)
    raise ValueError(f"unknown solver method: {method!r}")


def prefix_solutions(system: GramSystem, rhs: np.ndarray | None = None) -> list[np.ndarray]:
    """Solutions of every leading subsystem, smallest to largest.

    Toeplitz systems get them from one Levinson sweep; otherwise a single
    Cholesky factor is computed and its leading blocks are reused, since
    the factor of a leading principal submatrix is the leading block of
    the full factor.
    """
    b = system.rhs if rhs is None else np.asarray(rhs, dtype=complex)
    out: list[np.ndarray] = []
    if system.structure == STRUCTURE_TOEPLITZ:
        try:
            _levinson_pass(system.matrix[:, 0].copy(), b, collect=lambda m, x: out.append(x.copy()))
            return out
        except _LevinsonBreakdown:
            out.clear()
    lower = _cholesky_factor(system.matrix)
    for m in range(system.n + 1):
        block = lower[: m + 1, : m + 1]
        out.append(_cholesky_apply(block, b[: m + 1]))
    return out
