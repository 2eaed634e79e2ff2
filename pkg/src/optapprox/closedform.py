"""Closed-form reference values for the family f_a = (1-z)^a in the unweighted space.

These formulas are the primary oracle for the solver pipeline: explicit
approximant coefficients, the value at the origin, the distance decay
law, and the zeros of the degree-2 approximant with their geometric
constants.  Gamma/beta ratios are always combined in log space, since
direct factorials overflow near argument 170.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import NumericsError

# the two algebraically equal coefficient forms must agree this tightly
FORM_AGREEMENT_RTOL = 1e-12


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for positive real arguments.

    Thin validated wrapper over the C library implementation, which is
    Lanczos-class accurate (relative error of exp(log_gamma) well below
    1e-13 on [1, 1e6]).
    """
    if not (x > 0.0):
        raise ValueError("log_gamma requires a positive argument")
    return math.lgamma(x)


def _log_beta(x: float, y: float) -> float:
    return log_gamma(x) + log_gamma(y) - log_gamma(x + y)


def approximant_coeff_hardy(a: int, k: int, n: int) -> float:
    """Coefficient k of the degree-n optimal approximant to 1/(1-z)^a at alpha=0.

    Evaluates both equivalent closed forms (binomial-times-beta-ratio and
    pure gamma-ratio) and cross-checks them before returning.
    """
    if a < 1:
        raise ValueError("exponent a must be a positive integer")
    if not 0 <= k <= n:
        raise ValueError("coefficient index must satisfy 0 <= k <= n")
    log_binom = log_gamma(k + a) - log_gamma(k + 1.0) - log_gamma(a)
    beta_form = math.exp(log_binom + _log_beta(n + a + 1.0, a) - _log_beta(n - k + 1.0, a))
    gamma_form = math.exp(
        log_gamma(k + a)
        + log_gamma(n + a + 1.0 - k)
        + log_gamma(n + a + 1.0)
        - log_gamma(k + 1.0)
        - log_gamma(n - k + 1.0)
        - log_gamma(a)
        - log_gamma(n + 2.0 * a + 1.0)
    )
    if abs(beta_form - gamma_form) > FORM_AGREEMENT_RTOL * abs(beta_form):
        raise NumericsError(
            f"closed-form coefficient variants disagree at a={a}, k={k}, n={n}: "
            f"{beta_form!r} vs {gamma_form!r}"
        )
    return beta_form


def approximant_coeffs_hardy(a: int, n: int) -> list[float]:
    """Full coefficient vector of the degree-n closed-form approximant."""
    return [approximant_coeff_hardy(a, k, n) for k in range(n + 1)]


def approximant_coeff_exact(a: int, k: int, n: int) -> Fraction:
    """Exact rational value of the closed-form coefficient (slow path).

    Intended for modest integer inputs (a <= 20, n <= 40 or so) where
    big-integer factorials stay cheap.
    """
    if a < 1:
        raise ValueError("exponent a must be a positive integer")
    if not 0 <= k <= n:
        raise ValueError("coefficient index must satisfy 0 <= k <= n")
    binom = math.comb(k + a - 1, k)
    num = math.factorial(n + a) * math.factorial(n - k + a)
    den = math.factorial(n + 2 * a) * math.factorial(n - k)
    return Fraction(binom * num, den)


def approximant_at_zero(a: int, n: int) -> float:
    """Origin value of the degree-n approximant; lies in (0, 1), increasing in n."""
    if a < 1:
        raise ValueError("exponent a must be a positive integer")
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return math.exp(_log_p0(a, n))


def _log_p0(a: int, n: int) -> float:
    return 2.0 * log_gamma(n + a + 1.0) - log_gamma(n + 1.0) - log_gamma(n + 2.0 * a + 1.0)


def distance_asymptotic(a: int, n: int) -> tuple[float, float]:
    """Exact squared distance 1 - p_n(0) and its decay-law estimate a^2/(n+a+1).

    The exact value is computed as -expm1(log p_n(0)) to dodge the
    1 - (1 - small) cancellation at large n.
    """
    if a < 1:
        raise ValueError("exponent a must be a positive integer")
    exact = -math.expm1(_log_p0(a, n))
    asymptotic = a * a / (n + a + 1.0)
    return exact, asymptotic


def quadratic_zeros(a: float) -> tuple[complex, complex]:
    """Zeros of the degree-2 approximant for (1-z)^a: -1 +/- i sqrt(2/a)."""
    if not a > 0:
        raise ValueError("exponent a must be positive")
    s = math.sqrt(2.0 / a)
    return complex(-1.0, s), complex(-1.0, -s)


@dataclass(frozen=True)
class ZeroGeometry:
    """The three geometric constants attached to the degree-2 zero pair."""

    pair_distance: float
    distance_to_one: float
    modulus: float


def zero_geometry_constants(a: float) -> ZeroGeometry:
    """Distance between the zeros, distance to z=1, and their modulus.

    2 sqrt(2/a), sqrt(4 + 2/a) and sqrt(1 + 2/a) respectively; each
    reproduces the corresponding quantity computed from quadratic_zeros.
    """
    if not a > 0:
        raise ValueError("exponent a must be positive")
    return ZeroGeometry(
        pair_distance=2.0 * math.sqrt(2.0 / a),
        distance_to_one=math.sqrt(4.0 + 2.0 / a),
        modulus=math.sqrt(1.0 + 2.0 / a),
    )
