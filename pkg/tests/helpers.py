"""Shared generators and small independent oracles for the test suite."""

import numpy as np

from optapprox import series


def random_complex_poly(rng, max_degree=8, min_abs_a0=0.0):
    """Random polynomial with Re/Im coefficients uniform on [-1, 1].

    When min_abs_a0 > 0, the constant term is redrawn until it clears the
    floor (point evaluation at the origin must not degenerate).
    """
    deg = int(rng.integers(0, max_degree + 1))
    coeffs = rng.uniform(-1.0, 1.0, deg + 1) + 1j * rng.uniform(-1.0, 1.0, deg + 1)
    while abs(coeffs[0]) < min_abs_a0:
        coeffs[0] = rng.uniform(-1.0, 1.0) + 1j * rng.uniform(-1.0, 1.0)
    while abs(coeffs[-1]) < 0.05:
        coeffs[-1] = rng.uniform(-1.0, 1.0) + 1j * rng.uniform(-1.0, 1.0)
    return series(coeffs)


def brute_force_gram(coeffs, n, alpha):
    """Direct triple-loop assembly of the moment matrix and right side."""
    a = np.asarray(coeffs, dtype=complex)
    deg = len(a) - 1
    width = deg + n + 1
    m = np.zeros((n + 1, n + 1), dtype=complex)
    for j in range(n + 1):
        for k in range(n + 1):
            total = 0.0 + 0.0j
            for idx in range(width):
                aj = a[idx - j] if 0 <= idx - j <= deg else 0.0
                ak = a[idx - k] if 0 <= idx - k <= deg else 0.0
                total += aj * np.conj(ak) * (idx + 1.0) ** alpha
            m[j, k] = total
    b = np.zeros(n + 1, dtype=complex)
    b[0] = np.conj(a[0])
    return m, b


def brute_force_approximant(coeffs, n, alpha):
    """Independent normal-equation solve: orthogonality of p f - 1 to z^j f.

    Solves sum_k c_k <z^k f, z^j f> = <1, z^j f> with a dense numpy solve,
    entirely bypassing the package's assembly and solver code paths.
    """
    m, b = brute_force_gram(coeffs, n, alpha)
    return np.linalg.solve(m.conj(), b)
