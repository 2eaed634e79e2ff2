"""Gram systems for the least-squares problem min ||p f - 1||.

The matrix collects the moments <z^j f, z^k f> for 0 <= j, k <= n and the
right-hand side the pairings <1, z^j f>.  Everything is a finite weighted
coefficient convolution, so entries are exact (to roundoff) for polynomial
input; no quadrature is involved.
"""

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import TaylorSeries1D, alpha_of, complex_to_pair, pair_to_complex

STRUCTURE_TOEPLITZ = "toeplitz"
STRUCTURE_TWO_ISOMETRY = "two_isometry"
STRUCTURE_GENERIC = "generic"

# relative tolerance for the structure identities, against max |M_{j,k}|
STRUCTURE_TOL = 1e-12


@dataclass(frozen=True)
class GramSystem:
    """Hermitian moment matrix and right-hand side of the normal equations."""

    matrix: np.ndarray
    rhs: np.ndarray
    n: int
    alpha: float
    structure: str

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        b = np.asarray(self.rhs, dtype=complex)
        if m.shape != (self.n + 1, self.n + 1) or b.shape != (self.n + 1,):
            raise ValueError("system dimensions do not match the stated degree")
        m = m.copy()
        b = b.copy()
        m.flags.writeable = False
        b.flags.writeable = False
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "rhs", b)


def moment(f: TaylorSeries1D, j: int, k: int, s) -> complex:
    """Single moment <z^j f, z^k f> = sum_m a_{m-j} conj(a_{m-k}) (m+1)^alpha."""
    if j < 0 or k < 0:
        raise ValueError("moment indices must be nonnegative")
    a = alpha_of(s)
    deg = len(f.coeffs) - 1
    lo = max(j, k)
    hi = min(j, k) + deg
    if hi < lo:
        return 0.0 + 0.0j
    m = np.arange(lo, hi + 1)
    w = (m + 1.0) ** a
    return complex(np.sum(f.coeffs[m - j] * np.conj(f.coeffs[m - k]) * w))


def _shift_stack(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Rows j = coefficients of z^j f, embedded in a common length."""
    deg = len(coeffs) - 1
    width = deg + n + 1
    rows = np.zeros((n + 1, width), dtype=complex)
    for j in range(n + 1):
        rows[j, j : j + deg + 1] = coeffs
    return rows


def build_system(f: TaylorSeries1D, n: int, s) -> GramSystem:
    """Assemble the degree-n normal equations for a nonzero function.

    Parameters
    ----------
    f : TaylorSeries1D
        The function being inverted; must not be identically zero.
    n : int
        Approximation degree (system size n+1).
    s : SpaceParam or float
        Space weight exponent.

    Returns
    -------
    GramSystem
        With the structure tag already detected.
    """
    if n < 0:
        raise ValueError("degree must be nonnegative")
    if f.is_zero:
        raise ValueError("cannot build a Gram system for the zero function")
    a = alpha_of(s)
    rows = _shift_stack(f.coeffs, n)
    w = (np.arange(rows.shape[1]) + 1.0) ** a
    matrix = (rows * w) @ rows.conj().T
    # <1, z^j f> reduces to the j = 0 slot but is assembled honestly
    one = np.zeros(rows.shape[1], dtype=complex)
    one[0] = 1.0
    rhs = (rows.conj() * w) @ one
    structure = detect_structure_matrix(matrix)
    return GramSystem(matrix, rhs, n, a, structure)


def detect_structure_matrix(matrix: np.ndarray) -> str:
    """Classify a Hermitian moment matrix: toeplitz, two_isometry, or generic.

    Toeplitz means constant diagonals; the two-isometry tag means the
    second difference along shifted diagonals vanishes.  Toeplitz wins
    when both hold (it implies the weaker identity).
    """
    m = np.asarray(matrix)
    scale = np.max(np.abs(m))
    if scale == 0.0:
        return STRUCTURE_GENERIC
    tol = STRUCTURE_TOL * scale
    n1 = m.shape[0]

    is_toeplitz = True
    for d in range(-(n1 - 1), n1):
        diag = np.diagonal(m, offset=d)
        if np.max(np.abs(diag - diag[0])) > tol:
            is_toeplitz = False
            break
    if is_toeplitz:
        return STRUCTURE_TOEPLITZ

    if n1 >= 3:
        second_diff = m[:-2, :-2] - 2.0 * m[1:-1, 1:-1] + m[2:, 2:]
        if np.max(np.abs(second_diff)) <= tol:
            return STRUCTURE_TWO_ISOMETRY
        return STRUCTURE_GENERIC
    # too small to discriminate: the vacuous identity holds
    return STRUCTURE_TWO_ISOMETRY


def detect_structure(system: GramSystem) -> str:
    return detect_structure_matrix(system.matrix)


def hardy_moment_closed_form(a: int, j: int, k: int):
    """Moment of (1-z)^a at alpha=0: (-1)^(j-k) C(2a, a+k-j), 0 out of range."""
    if a < 1:
        raise ValueError("exponent a must be a positive integer")
    idx = a + k - j
    if idx < 0 or idx > 2 * a:
        return 0
    return (-1) ** (j - k) * math.comb(2 * a, idx)


def dirichlet_moment_closed_form(a: int, j: int, k: int):
    """Moment of (1-z)^a at alpha=1: the Hardy value times (k+j+a+2)/2."""
    if a < 1:
        raise ValueError("exponent a must be a positive integer")
    base = hardy_moment_closed_form(a, j, k)
    if base == 0:
        return 0.0
    return base * (k + j + a + 2) / 2.0


def inner_moment_profile(f: TaylorSeries1D, j_max: int, s) -> np.ndarray:
    """Sequence <z^j f, f> for j = 1..j_max.

    In the unweighted (alpha = 0) space an all-zero profile is the
    fingerprint of an inner function; other weights are allowed but the
    interpretation no longer applies, so a warning is emitted.
    """
    if j_max < 1:
        raise ValueError("j_max must be at least 1")
    a = alpha_of(s)
    if a != 0.0:
        warnings.warn(
            "inner-function moment profile is meaningful at alpha=0 only",
            UserWarning,
            stacklevel=2,
        )
    return np.array([moment(f, j, 0, a) for j in range(1, j_max + 1)])


def gram_to_json(system: GramSystem) -> dict:
    return {
        "n": system.n,
        "alpha": system.alpha,
        "structure": system.structure,
        "M": [[complex_to_pair(v) for v in row] for row in system.matrix],
        "b": [complex_to_pair(v) for v in system.rhs],
    }


def gram_from_json(data: dict) -> GramSystem:
    matrix = np.array([[pair_to_complex(v) for v in row] for row in data["M"]])
    rhs = np.array([pair_to_complex(v) for v in data["b"]])
    return GramSystem(matrix, rhs, int(data["n"]), float(data["alpha"]), data["structure"])
