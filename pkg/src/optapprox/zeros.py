"""Root finding for approximants and zero-location diagnostics.

Polynomial zeros are computed by simultaneous Aberth-Ehrlich iteration
with a Newton polish (degrees 1 and 2 use the closed formulas).  Zero
moduli of optimal approximants are checked against the lower bound
min(1, 2^(alpha/2)), and the two-parameter function family gets a full
geometric report: pairwise zero distances, distances to the relevant
boundary points, and moduli.
"""

import cmath
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import TaylorSeries1D, alpha_of, complex_to_pair, inner_product, norm_sq, shift
from .errors import RootConvergenceWarning

ABERTH_MAX_ITER = 200
ABERTH_STEP_TOL = 1e-14
NEWTON_POLISH_STEPS = 3

# roots closer than this relative distance are merged into one multiple root
CLUSTER_RTOL = 1e-7

# slack applied to the modulus bound before declaring a violation
BOUND_SLACK = 1e-9


@dataclass(frozen=True)
class FamilyGeometry:
    """Geometric data extracted from a zero set."""

    pairwise_distances: np.ndarray
    reference_points: np.ndarray
    distances_to_reference_points: np.ndarray
    moduli: np.ndarray


@dataclass(frozen=True)
class ZeroReport:
    """Zero set of an approximant with the location-bound verdict."""

    zeros: np.ndarray
    min_modulus: float
    bound: float
    bound_satisfied: bool
    geometry: FamilyGeometry | None = None
    converged: bool = True


def _horner_with_derivative(coeffs: np.ndarray, z: np.ndarray):
    p = np.full_like(z, coeffs[-1])
    dp = np.zeros_like(z)
    for k in range(len(coeffs) - 2, -1, -1):
        dp = dp * z + p
        p = p * z + coeffs[k]
    return p, dp


def _quadratic_roots(c0: complex, c1: complex, c2: complex) -> np.ndarray:
    disc = c1 * c1 - 4.0 * c2 * c0
    root = cmath.sqrt(disc)
    # pick the sign that avoids cancellation in -b -+ sqrt(disc)
    if abs(c1 + root) >= abs(c1 - root):
        q = -0.5 * (c1 + root)
    else:
        q = -0.5 * (c1 - root)
    return np.array([q / c2, c0 / q])


def _aberth(coeffs: np.ndarray):
    """All roots of a degree >= 1 polynomial with nonzero extreme coefficients.

    Returns (roots, converged, iterations).
    """
    d = len(coeffs) - 1
    if d == 1:
        return np.array([-coeffs[0] / coeffs[1]]), True, 0
    if d == 2:
        return _quadratic_roots(coeffs[0], coeffs[1], coeffs[2]), True, 0

    # initial guesses on a circle, angles offset to dodge symmetric stalls
    radius = (1.0 + np.max(np.abs(coeffs[:-1] / coeffs[-1]))) ** (1.0 / d)
    angles = 2.0 * np.pi * (np.arange(d) + 0.5) / d + 0.25
    z = radius * np.exp(1j * angles)

    converged = False
    iterations = ABERTH_MAX_ITER
    for it in range(1, ABERTH_MAX_ITER + 1):
        p, dp = _horner_with_derivative(coeffs, z)
        dp = np.where(dp == 0.0, 1e-300, dp)
        ratio = p / dp
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        diff = np.where(diff == 0.0, 1e-300, diff)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        repulsion = inv.sum(axis=1)
        step = ratio / (1.0 - ratio * repulsion)
        z = z - step
        if np.max(np.abs(step)) <= ABERTH_STEP_TOL * (1.0 + np.max(np.abs(z))):
            converged = True
            iterations = it
            break

    for _ in range(NEWTON_POLISH_STEPS):
        p, dp = _horner_with_derivative(coeffs, z)
        safe = np.abs(dp) > 0.0
        z = np.where(safe, z - p / np.where(safe, dp, 1.0), z)

    return z, converged, iterations


def _cluster_multiple_roots(roots: np.ndarray) -> np.ndarray:
    """Merge roots within the relative cluster tolerance, averaging each group."""
    d = len(roots)
    if d <= 1:
        return roots
    parent = list(range(d))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(d):
        for j in range(i + 1, d):
            tol = CLUSTER_RTOL * max(1.0, abs(roots[i]))
            if abs(roots[i] - roots[j]) <= tol:
                parent[find(i)] = find(j)

    groups: dict[int, list[int]] = {}
    for i in range(d):
        groups.setdefault(find(i), []).append(i)
    out = roots.copy()
    for members in groups.values():
        if len(members) > 1:
            mean = np.mean(roots[members])
            out[members] = mean
    return out


def find_roots(p: TaylorSeries1D) -> np.ndarray:
    """All zeros of a nonconstant polynomial, with multiplicity.

    Effective-degree many roots are returned, sorted by real then
    imaginary part.  Non-convergence of the simultaneous iteration emits
    a RootConvergenceWarning and returns the best iterate.
    """
    deg = p.effective_degree
    if deg < 1:
        raise ValueError("root finding requires effective degree >= 1")
    coeffs = p.coeffs[: deg + 1]
    mags = np.abs(coeffs)
    floor = 1e-14 * mags.max()

    val = 0
    while abs(coeffs[val]) <= floor:
        val += 1
    zero_roots = np.zeros(val, dtype=complex)
    body = coeffs[val:]

    if len(body) == 1:
        roots = zero_roots
    else:
        found, converged, _ = _aberth(np.asarray(body, dtype=complex))
        if not converged:
            warnings.warn(
                "simultaneous root iteration did not converge within "
                f"{ABERTH_MAX_ITER} steps; returning best iterate",
                RootConvergenceWarning,
                stacklevel=2,
            )
        found = _cluster_multiple_roots(found)
        roots = np.concatenate([zero_roots, found])

    order = np.lexsort((roots.imag, roots.real))
    return roots[order]


def degree_one_zero(f: TaylorSeries1D, s) -> complex:
    """Zero of the degree-1 optimal approximant: ||z f||^2 / <f, z f>.

    Raises when <f, z f> vanishes, in which case the degree-1 approximant
    has no zero (its linear coefficient is 0).
    """
    zf = shift(f)
    denom = inner_product(f, zf, s)
    scale = math.sqrt(norm_sq(f, s) * norm_sq(zf, s))
    if abs(denom) <= 1e-14 * scale:
        raise ValueError("degree-1 approximant is zero-free: <f, z f> vanishes")
    return complex(norm_sq(zf, s)) / denom


def modulus_bound(s) -> float:
    """Lower bound min(1, 2^(alpha/2)) for moduli of approximant zeros."""
    return min(1.0, 2.0 ** (alpha_of(s) / 2.0))


def check_zero_bound(zeros, s, geometry: FamilyGeometry | None = None, converged: bool = True) -> ZeroReport:
    """Wrap a zero set in a report, checking the modulus lower bound.

    Violations are flagged in the report and emitted as warnings, never
    silently dropped.
    """
    zs = np.asarray(zeros, dtype=complex)
    bound = modulus_bound(s)
    if zs.size == 0:
        return ZeroReport(zs, float("inf"), bound, True, geometry, converged)
    min_mod = float(np.min(np.abs(zs)))
    satisfied = min_mod > bound - BOUND_SLACK
    if not satisfied:
        warnings.warn(
            f"approximant zero of modulus {min_mod:.12g} violates the lower bound {bound:.12g}",
            UserWarning,
            stacklevel=2,
        )
    return ZeroReport(zs, min_mod, bound, satisfied, geometry, converged)


def _geometry(zeros: np.ndarray, reference_points: np.ndarray) -> FamilyGeometry:
    k = len(zeros)
    pair = np.array([abs(zeros[i] - zeros[j]) for i in range(k) for j in range(i + 1, k)])
    dist_ref = np.abs(zeros[:, None] - reference_points[None, :])
    return FamilyGeometry(pair, reference_points, dist_ref, np.abs(zeros))


def approximant_zero_report(f: TaylorSeries1D, n: int, s, method: str = "auto") -> ZeroReport:
    """Zero report for the degree-n optimal approximant of a function."""
    from .approx import optimal_approximant

    result = optimal_approximant(f, n, s, method=method)
    if result.polynomial.effective_degree < 1:
        return check_zero_bound(np.array([], dtype=complex), s)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RootConvergenceWarning)
        roots = find_roots(result.polynomial)
        converged = not any(issubclass(w.category, RootConvergenceWarning) for w in caught)
    return check_zero_bound(roots, s, converged=converged)


def family_report(beta: float, gamma: float, theta: float, s, n: int, truncation: int | None = None) -> ZeroReport:
    """End-to-end zero geometry for f = (1-z)^beta [(z-e^{i t})(z-e^{-i t})]^gamma.

    Materializes the function, computes its degree-n optimal approximant,
    finds the zeros, and attaches distances to the candidate energy
    centers {1, e^{i theta}, e^{-i theta}}.
    """
    from .approx import optimal_approximant
    from .core import DEFAULT_TRUNCATION, FunctionSpec, materialize

    spec = FunctionSpec.problem6(beta, gamma, theta, truncation=truncation)
    f = materialize(spec, default_truncation=DEFAULT_TRUNCATION)
    refs = np.array([1.0 + 0.0j, cmath.exp(1j * theta), cmath.exp(-1j * theta)])

    result = optimal_approximant(f, n, s)
    if result.polynomial.effective_degree < 1:
        empty = np.array([], dtype=complex)
        return check_zero_bound(empty, s, geometry=_geometry(empty, refs))

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", RootConvergenceWarning)
        roots = find_roots(result.polynomial)
        converged = not any(issubclass(w.category, RootConvergenceWarning) for w in caught)
    return check_zero_bound(roots, s, geometry=_geometry(roots, refs), converged=converged)


def zero_report_to_json(report: ZeroReport) -> dict:
    geometry = None
    if report.geometry is not None:
        geometry = {
            "pairwise_distances": [float(v) for v in report.geometry.pairwise_distances],
            "reference_points": [complex_to_pair(v) for v in report.geometry.reference_points],
            "distances_to_reference_points": [
                [float(v) for v in row] for row in report.geometry.distances_to_reference_points
            ],
            "moduli": [float(v) for v in report.geometry.moduli],
        }
    return {
        "zeros": [complex_to_pair(z) for z in report.zeros],
        "min_modulus": float(report.min_modulus) if report.zeros.size else None,
        "bound": report.bound,
        "bound_satisfied": bool(report.bound_satisfied),
        "geometry": geometry,
    }
