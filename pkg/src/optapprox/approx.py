"""Optimal approximants, distance profiles, and cyclicity diagnostics.

The degree-n optimal approximant p minimizes ||p f - 1|| over polynomials
of degree at most n.  Orthogonality of the residual against every z^j f
turns this into the Gram system: with M_{j,k} = <z^j f, z^k f> and
b_j = <1, z^j f>, the coefficients satisfy

    sum_k <z^k f, z^j f> c_k = b_j,   i.e.   conj(M) c = b,

so the solver is fed conj(b) and the solution conjugated back (a no-op
for real input).  Every computed distance is cross-validated against the
projection identity ||p f - 1||^2 = 1 - p(0) f(0).
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import zeros as zeros_mod
from .core import (
    HARDY,
    TaylorSeries1D,
    add_scalar,
    alpha_of,
    complex_to_pair,
    multiply,
    norm_sq,
)
from .errors import NumericsError
from .gram import GramSystem, build_system
from .solve import SolveReport, prefix_solutions, solve_system

# direct and identity-based distances farther apart than this abort the run
DIST_CROSSCHECK_ABORT = 1e-8

# telescoping factors use explicitly computed roots up to this degree,
# then the exact extreme-coefficient ratio (same multiset product)
TELESCOPE_ROOTS_UNTIL = 50


@dataclass(frozen=True)
class OptimalApproximant:
    """A computed optimal approximant with its self-validation data."""

    polynomial: TaylorSeries1D
    n: int
    effective_degree: int
    dist_sq: float
    dist_sq_formula: float
    solver: SolveReport
    alpha: float
    input_truncation: int | None = None


def _distance_direct(p: TaylorSeries1D, f: TaylorSeries1D, alpha: float) -> float:
    residual = add_scalar(multiply(p, f), -1.0)
    return norm_sq(residual, alpha)


def _distance_formula(p0: complex, f0: complex) -> tuple[float, float]:
    product = p0 * f0
    return 1.0 - product.real, abs(product.imag)


def optimal_approximant(f: TaylorSeries1D, n: int, s, method: str = "auto") -> OptimalApproximant:
    """Compute the degree-n optimal approximant to 1/f.

    Parameters
    ----------
    f : TaylorSeries1D
        Nonzero input function (a truncated series is treated exactly).
    n : int
        Approximation degree.
    s : SpaceParam or float
        Space weight exponent.
    method : str
        "auto", "cholesky" or "levinson" (auto follows the structure tag).

    Returns
    -------
    OptimalApproximant
        The squared distance is computed both by direct expansion of
        ||p f - 1||^2 and by the identity 1 - p(0) f(0); a disagreement
        beyond 1e-8 raises NumericsError with the condition estimate.
    """
    alpha = alpha_of(s)
    system = build_system(f, n, alpha)
    report = solve_system(system, rhs=np.conj(system.rhs), method=method)
    coeffs = np.conj(report.solution)
    p = TaylorSeries1D(coeffs)

    dist_direct = _distance_direct(p, f, alpha)
    dist_formula, imag_leak = _distance_formula(p.value_at_zero(), f.value_at_zero())
    if abs(dist_direct - dist_formula) > DIST_CROSSCHECK_ABORT or imag_leak > 1e-6:
        raise NumericsError(
            "distance cross-check failed: direct "
            f"{dist_direct!r} vs identity {dist_formula!r} "
            f"(imag leak {imag_leak:.3e}, condition estimate {report.cond_estimate:.3e})"
        )
    return OptimalApproximant(
        polynomial=p,
        n=n,
        effective_degree=p.effective_degree,
        dist_sq=dist_direct,
        dist_sq_formula=dist_formula,
        solver=report,
        alpha=alpha,
        input_truncation=f.truncation_degree if f.truncated else None,
    )


@dataclass(frozen=True)
class ProfileEntry:
    n: int
    dist_sq: float
    dist_sq_formula: float
    p_at_zero: complex


def _profile_entries(f: TaylorSeries1D, n_max: int, alpha: float, with_direct=True):
    """Per-degree approximant data from a single assembly.

    One Gram assembly at n_max is factored once and every leading
    subsystem is solved from it, so the whole profile costs little more
    than the largest single solve.  No cross-check abort is applied here:
    profiles are diagnostic sweeps and may legitimately enter the
    ill-conditioned tail.
    """
    system = build_system(f, n_max, alpha)
    solutions = prefix_solutions(system, rhs=np.conj(system.rhs))
    f0 = f.value_at_zero()
    entries = []
    coeff_vectors = []
    for n, sol in enumerate(solutions):
        coeffs = np.conj(sol)
        p0 = complex(coeffs[0])
        dist_formula = 1.0 - (p0 * f0).real
        if with_direct:
            p = TaylorSeries1D(coeffs)
            dist_direct = _distance_direct(p, f, alpha)
        else:
            dist_direct = dist_formula
        entries.append(ProfileEntry(n, dist_direct, dist_formula, p0))
        coeff_vectors.append(coeffs)
    return entries, coeff_vectors


def distance_profile(f: TaylorSeries1D, n_max: int, s) -> list[ProfileEntry]:
    """Squared distances ||p*_n f - 1||^2 for n = 0..n_max (nonincreasing)."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    entries, _ = _profile_entries(f, n_max, alpha_of(s))
    return entries


@dataclass(frozen=True)
class CyclicityReport:
    """Numerical evidence for or against cyclicity of the input."""

    alpha: float
    f_at_zero: complex
    vanishes_at_origin: bool
    entries: list[ProfileEntry]
    decay_exponent: float | None
    p_at_zero_target: complex | None


def cyclicity_report(f: TaylorSeries1D, s, n_max: int) -> CyclicityReport:
    """Track p*_n(0) -> 1/f(0) and fit the distance decay rate.

    A function vanishing at the origin is reported non-cyclic right away
    (point evaluation obstructs approximation).  Otherwise the report
    carries p*_n(0), the squared distances, and a log-log least-squares
    fit of distance against degree over the upper half of the range,
    where the asymptotic regime dominates.
    """
    alpha = alpha_of(s)
    f0 = f.value_at_zero()
    scale = float(np.max(np.abs(f.coeffs)))
    if scale == 0.0 or abs(f0) <= 1e-14 * scale:
        return CyclicityReport(alpha, f0, True, [], None, None)

    entries, _ = _profile_entries(f, n_max, alpha)
    exponent = _fit_decay_exponent(entries)
    return CyclicityReport(alpha, f0, False, entries, exponent, 1.0 / f0)


def _fit_decay_exponent(entries: list[ProfileEntry]) -> float | None:
    n_max = entries[-1].n
    lo = max(1, n_max // 2)
    xs, ys = [], []
    for e in entries:
        if e.n >= lo and e.dist_sq > 1e-300:
            xs.append(math.log(e.n))
            ys.append(math.log(e.dist_sq))
    if len(xs) < 2:
        return None
    slope, _ = np.polyfit(np.asarray(xs), np.asarray(ys), 1)
    return float(slope)


@dataclass(frozen=True)
class TelescopeEntry:
    n: int
    factor: float | None
    partial_product: float | None
    via_roots: bool


@dataclass(frozen=True)
class TelescopeResult:
    entries: list[TelescopeEntry]
    target: complex
    degenerate_count: int
    roots_until: int


def telescoping_product(
    f: TaylorSeries1D, N: int, s=HARDY, roots_until: int = TELESCOPE_ROOTS_UNTIL
) -> TelescopeResult:
    """Running product of (1 - prod |z_k|^-2) over approximant zero sets.

    Unweighted space only.  The product starts at n = 1: the degree-0
    approximant has an empty zero set, whose conventional empty product
    would zero out everything and contradict the nonzero limit.  Factors
    come from explicitly computed zeros up to degree ``roots_until`` and
    from the exact |c_deg / c_0|^2 coefficient ratio beyond (the same
    multiplicity-counted product, by Vieta).  Degree-degenerate
    approximants (effective degree 0) yield no factor and are reported,
    not folded in.
    """
    alpha = alpha_of(s)
    if alpha != 0.0:
        raise ValueError("telescoping zero-product is defined in the unweighted space only")
    if N < 1:
        raise ValueError("N must be at least 1")
    f0 = f.value_at_zero()
    scale = float(np.max(np.abs(f.coeffs)))
    if scale == 0.0:
        raise ValueError("telescoping product requires a nonzero function")
    if abs(f0) <= 1e-14 * scale:
        raise ValueError("telescoping product requires f(0) != 0")

    target = np.conj(f0) / norm_sq(f, alpha)
    entries: list[TelescopeEntry] = []
    degenerate = 0
    partial: float | None = None

    _, coeff_vectors = _profile_entries(f, N, alpha, with_direct=False)
    for n in range(1, N + 1):
        coeffs = coeff_vectors[n]
        p = TaylorSeries1D(coeffs)
        deg = p.effective_degree
        if deg < 1:
            degenerate += 1
            entries.append(TelescopeEntry(n, None, partial, False))
            continue
        if deg <= roots_until:
            roots = zeros_mod.find_roots(p)
            inv_sq = float(np.prod(1.0 / np.abs(roots) ** 2))
            via_roots = True
        else:
            inv_sq = float(abs(coeffs[deg] / coeffs[0]) ** 2)
            via_roots = False
        factor = 1.0 - inv_sq
        partial = factor if partial is None else partial * factor
        entries.append(TelescopeEntry(n, factor, partial, via_roots))

    if degenerate:
        warnings.warn(
            f"{degenerate} approximants had effective degree 0; "
            "their undefined factors were skipped",
            UserWarning,
            stacklevel=2,
        )
    return TelescopeResult(entries, complex(target), degenerate, roots_until)


def approximant_to_json(result: OptimalApproximant) -> dict:
    out = {
        "alpha": result.alpha,
        "n": result.n,
        "coeffs": [complex_to_pair(c) for c in result.polynomial.coeffs],
        "dist_sq": result.dist_sq,
        "dist_sq_formula": result.dist_sq_formula,
        "solver": result.solver.solver,
        "residual_inf": result.solver.residual_inf,
    }
    if result.input_truncation is not None:
        out["truncation"] = result.input_truncation
    return out
