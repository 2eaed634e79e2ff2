"""Two-variable analogue on the bidisk with product weights ((j+1)(k+1))^alpha.

Approximation uses the total-degree monomial family z1^j z2^k, j+k <= n,
ordered graded-lexicographically (by total degree, then z1-power
descending), which fixes the Gram matrix layout and the serialization
order once and for all.
"""

from dataclasses import dataclass

import numpy as np
from scipy.signal import convolve2d

from .core import alpha_of, complex_to_pair, pair_to_complex
from .errors import NumericsError
from .gram import GramSystem, detect_structure_matrix
from .solve import SolveReport, solve_system


@dataclass(frozen=True)
class TaylorSeries2D:
    """Finite 2-index coefficient array; entry [j, k] multiplies z1^j z2^k."""

    coeffs: np.ndarray
    truncated: bool = False
    truncation_degrees: tuple[int, int] | None = None

    def __post_init__(self):
        arr = np.atleast_2d(np.asarray(self.coeffs, dtype=complex))
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError("coefficient array must be a nonempty 2-d array")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("coefficients must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)

    @property
    def is_zero(self) -> bool:
        return not np.any(np.abs(self.coeffs) > 0.0)

    def value_at_origin(self) -> complex:
        return complex(self.coeffs[0, 0])


def series_2d(rows, truncated=False, truncation_degrees=None) -> TaylorSeries2D:
    return TaylorSeries2D(np.asarray(rows, dtype=complex), truncated, truncation_degrees)


@dataclass(frozen=True)
class MonomialBasis2D:
    """Total-degree monomial family in graded lexicographic order."""

    n: int
    index_list: tuple

    @staticmethod
    def total_degree(n: int) -> "MonomialBasis2D":
        if n < 0:
            raise ValueError("degree must be nonnegative")
        indices = []
        for d in range(n + 1):
            for j in range(d, -1, -1):
                indices.append((j, d - j))
        return MonomialBasis2D(n, tuple(indices))

    def __len__(self):
        return len(self.index_list)


def norm_sq_2d(f: TaylorSeries2D, s) -> float:
    a = alpha_of(s)
    d1, d2 = f.coeffs.shape
    w = np.outer((np.arange(d1) + 1.0), (np.arange(d2) + 1.0)) ** a
    return float(np.sum((f.coeffs.real**2 + f.coeffs.imag**2) * w))


def moment_2d(f: TaylorSeries2D, idx1, idx2, s) -> complex:
    """Moment <z1^j1 z2^k1 f, z1^j2 z2^k2 f> with product weights."""
    j1, k1 = idx1
    j2, k2 = idx2
    if min(j1, k1, j2, k2) < 0:
        raise ValueError("moment indices must be nonnegative")
    a = alpha_of(s)
    d1, d2 = f.coeffs.shape
    lo1, hi1 = max(j1, j2), min(j1, j2) + d1 - 1
    lo2, hi2 = max(k1, k2), min(k1, k2) + d2 - 1
    if hi1 < lo1 or hi2 < lo2:
        return 0.0 + 0.0j
    m1 = np.arange(lo1, hi1 + 1)
    m2 = np.arange(lo2, hi2 + 1)
    w = np.outer((m1 + 1.0), (m2 + 1.0)) ** a
    first = f.coeffs[np.ix_(m1 - j1, m2 - k1)]
    second = f.coeffs[np.ix_(m1 - j2, m2 - k2)]
    return complex(np.sum(first * np.conj(second) * w))


def _shift_stack_2d(coeffs: np.ndarray, basis: MonomialBasis2D) -> np.ndarray:
    d1, d2 = coeffs.shape
    n = basis.n
    rows = np.zeros((len(basis), (d1 + n) * (d2 + n)), dtype=complex)
    wide = np.zeros((d1 + n, d2 + n), dtype=complex)
    for i, (j, k) in enumerate(basis.index_list):
        wide[:] = 0.0
        wide[j : j + d1, k : k + d2] = coeffs
        rows[i] = wide.ravel()
    return rows


def build_system_2d(f: TaylorSeries2D, n: int, s) -> tuple[GramSystem, MonomialBasis2D]:
    """Normal equations over the total-degree basis.

    The returned GramSystem is indexed by basis position (its nominal
    degree is the basis size minus one).
    """
    if f.is_zero:
        raise ValueError("cannot build a Gram system for the zero function")
    a = alpha_of(s)
    basis = MonomialBasis2D.total_degree(n)
    rows = _shift_stack_2d(f.coeffs, basis)
    d1, d2 = f.coeffs.shape
    w1 = np.arange(d1 + n) + 1.0
    w2 = np.arange(d2 + n) + 1.0
    w = (np.outer(w1, w2) ** a).ravel()
    matrix = (rows * w) @ rows.conj().T
    rhs = np.zeros(len(basis), dtype=complex)
    rhs[0] = np.conj(f.coeffs[0, 0])
    system = GramSystem(matrix, rhs, len(basis) - 1, a, detect_structure_matrix(matrix))
    return system, basis


@dataclass(frozen=True)
class OptimalApproximant2D:
    """Optimal approximant over the total-degree basis, with validation data."""

    basis: MonomialBasis2D
    coeffs: np.ndarray
    polynomial: np.ndarray
    n: int
    dist_sq: float
    dist_sq_formula: float
    solver: SolveReport
    alpha: float


def optimal_approximant_2d(f: TaylorSeries2D, n: int, s) -> OptimalApproximant2D:
    """Minimize ||p f - 1|| over span{z1^j z2^k : j + k <= n}.

    The distance is computed directly from the expanded residual and via
    the projection identity 1 - p(0,0) f(0,0); both are stored and must
    agree.
    """
    alpha = alpha_of(s)
    system, basis = build_system_2d(f, n, alpha)
    report = solve_system(system, rhs=np.conj(system.rhs), method="cholesky")
    coeffs = np.conj(report.solution)

    poly = np.zeros((n + 1, n + 1), dtype=complex)
    for value, (j, k) in zip(coeffs, basis.index_list):
        poly[j, k] = value

    product = convolve2d(poly, f.coeffs)
    product[0, 0] -= 1.0
    dist_direct = norm_sq_2d(TaylorSeries2D(product), alpha)
    origin = complex(coeffs[0]) * f.value_at_origin()
    dist_formula = 1.0 - origin.real
    if abs(dist_direct - dist_formula) > 1e-8 or abs(origin.imag) > 1e-6:
        raise NumericsError(
            "bidisk distance cross-check failed: direct "
            f"{dist_direct!r} vs identity {dist_formula!r} "
            f"(condition estimate {report.cond_estimate:.3e})"
        )
    return OptimalApproximant2D(basis, coeffs, poly, n, dist_direct, dist_formula, report, alpha)


def swap_symmetry_check(f: TaylorSeries2D, n: int, s, rtol: float = 1e-10) -> bool:
    """Whether the approximant of a swap-invariant function is swap-invariant.

    Rejects input that is not itself invariant under exchanging the two
    variables.
    """
    c = f.coeffs
    side = max(c.shape)
    square = np.zeros((side, side), dtype=complex)
    square[: c.shape[0], : c.shape[1]] = c
    scale = np.max(np.abs(c))
    if scale == 0.0 or np.max(np.abs(square - square.T)) > 1e-12 * scale:
        raise ValueError("swap symmetry check requires a swap-invariant function")

    result = optimal_approximant_2d(f, n, s)
    p = result.polynomial
    pscale = np.max(np.abs(p))
    if pscale == 0.0:
        return True
    return bool(np.max(np.abs(p - p.T)) <= rtol * pscale)


def series_2d_to_json(f: TaylorSeries2D) -> dict:
    entries = []
    for j in range(f.coeffs.shape[0]):
        for k in range(f.coeffs.shape[1]):
            v = f.coeffs[j, k]
            if v != 0.0:
                entries.append({"j": j, "k": k, "v": complex_to_pair(v)})
    return {"coeffs": entries}


def series_2d_from_json(data) -> TaylorSeries2D:
    if isinstance(data, str):
        import json

        data = json.loads(data)
    entries = data["coeffs"]
    if not entries:
        raise ValueError("coefficient list must be nonempty")
    max_j = max(int(e["j"]) for e in entries)
    max_k = max(int(e["k"]) for e in entries)
    arr = np.zeros((max_j + 1, max_k + 1), dtype=complex)
    for e in entries:
        arr[int(e["j"]), int(e["k"])] = pair_to_complex(e["v"])
    return TaylorSeries2D(arr)


def approximant_2d_to_json(result: OptimalApproximant2D) -> dict:
    return {
        "alpha": result.alpha,
        "n": result.n,
        "coeffs": [
            {"j": j, "k": k, "v": complex_to_pair(v)}
            for v, (j, k) in zip(result.coeffs, result.basis.index_list)
        ],
        "dist_sq": result.dist_sq,
        "dist_sq_formula": result.dist_sq_formula,
        "solver": result.solver.solver,
        "residual_inf": result.solver.residual_inf,
    }
