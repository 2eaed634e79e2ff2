"""Coefficient sequences and weighted inner products for analytic functions on the disk.

A function f(z) = sum a_k z^k is represented by its finite coefficient
vector.  The space parameter alpha selects the weighted inner product

    <f, g> = sum_k f_k conj(g_k) (k+1)**alpha,

which is conjugate-linear in the second slot, so that pairing against the
point-evaluation kernel returns f(w).  alpha = -1, 0, 1 give the classical
Bergman, Hardy and Dirichlet norms.
"""

import json
import math
from dataclasses import dataclass

import numpy as np

DEFAULT_TRUNCATION = 256

# coefficients below this fraction of the max magnitude count as zero
RELATIVE_COEFF_FLOOR = 1e-14


@dataclass(frozen=True)
class SpaceParam:
    """Weight exponent alpha of the coefficient norm sum |a_k|^2 (k+1)^alpha."""

    alpha: float

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise ValueError("space parameter must be finite")


BERGMAN = SpaceParam(-1.0)
HARDY = SpaceParam(0.0)
DIRICHLET = SpaceParam(1.0)


def alpha_of(s) -> float:
    """Accept a SpaceParam or a bare float and return the weight exponent."""
    a = s.alpha if isinstance(s, SpaceParam) else float(s)
    if not math.isfinite(a):
        raise ValueError("space parameter must be finite")
    return a


@dataclass(frozen=True)
class TaylorSeries1D:
    """Finite complex coefficient sequence, index k holding the z^k coefficient.

    ``truncated`` marks the sequence as the truncation of an infinite
    series; ``truncation_degree`` then records through which degree the
    stored coefficients agree with the full expansion.
    """

    coeffs: np.ndarray
    truncated: bool = False
    truncation_degree: int | None = None

    def __post_init__(self):
        arr = np.atleast_1d(np.asarray(self.coeffs, dtype=complex))
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("coefficient sequence must be a nonempty 1-d array")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("coefficients must be finite")
        arr = arr.copy()
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)
        if self.truncated and self.truncation_degree is None:
            object.__setattr__(self, "truncation_degree", len(arr) - 1)

    def __len__(self):
        return len(self.coeffs)

    @property
    def degree(self) -> int:
        """Raw storage degree (trailing zeros included)."""
        return len(self.coeffs) - 1

    @property
    def effective_degree(self) -> int:
        """Highest index whose coefficient exceeds the relative zero floor.

        Returns -1 for an identically zero sequence.
        """
        mags = np.abs(self.coeffs)
        top = mags.max()
        if top == 0.0:
            return -1
        live = np.nonzero(mags > RELATIVE_COEFF_FLOOR * top)[0]
        return int(live[-1])

    @property
    def is_zero(self) -> bool:
        return self.effective_degree < 0

    @property
    def valuation(self) -> int:
        """Lowest index with a non-negligible coefficient (0 for the zero series)."""
        mags = np.abs(self.coeffs)
        top = mags.max()
        if top == 0.0:
            return 0
        return int(np.nonzero(mags > RELATIVE_COEFF_FLOOR * top)[0][0])

    def value_at_zero(self) -> complex:
        return complex(self.coeffs[0])

    def __call__(self, z):
        return poly_eval(self, z)


def series(coeffs, truncated=False, truncation_degree=None) -> TaylorSeries1D:
    """Convenience constructor from any coefficient iterable."""
    return TaylorSeries1D(np.asarray(list(coeffs), dtype=complex), truncated, truncation_degree)


def inner_product(f: TaylorSeries1D, g: TaylorSeries1D, s) -> complex:
    """Weighted coefficient pairing sum f_k conj(g_k) (k+1)^alpha.

    Conjugate-linear in ``g``; the shared index range suffices because
    both sequences are finite.
    """
    a = alpha_of(s)
    m = min(len(f.coeffs), len(g.coeffs))
    w = (np.arange(m) + 1.0) ** a
    return complex(np.sum(f.coeffs[:m] * np.conj(g.coeffs[:m]) * w))


def norm_sq(f: TaylorSeries1D, s) -> float:
    """Squared weighted norm sum |a_k|^2 (k+1)^alpha (real, >= 0)."""
    a = alpha_of(s)
    w = (np.arange(len(f.coeffs)) + 1.0) ** a
    return float(np.sum((f.coeffs.real**2 + f.coeffs.imag**2) * w))


def multiply(f: TaylorSeries1D, g: TaylorSeries1D) -> TaylorSeries1D:
    """Exact Cauchy product of the stored coefficients; degrees add.

    The result is flagged truncated when either factor is, with the
    reliable prefix ending where the shorter information runs out: a
    factor truncated at N contributes its valuation to the usable range
    of the product.
    """
    prod = np.convolve(f.coeffs, g.coeffs)
    truncated = f.truncated or g.truncated
    trunc_deg = None
    if truncated:
        limits = []
        if f.truncated:
            limits.append(f.truncation_degree + g.valuation)
        if g.truncated:
            limits.append(g.truncation_degree + f.valuation)
        trunc_deg = min(limits)
        prod = prod[: trunc_deg + 1]
    return TaylorSeries1D(prod, truncated, trunc_deg)


def add_scalar(f: TaylorSeries1D, c: complex) -> TaylorSeries1D:
    """Return f + c (adjusting only the constant coefficient)."""
    out = f.coeffs.copy()
    out[0] += c
    return TaylorSeries1D(out, f.truncated, f.truncation_degree)


def shift(f: TaylorSeries1D) -> TaylorSeries1D:
    """Multiply by z: prepend a zero coefficient."""
    out = np.concatenate([[0.0 + 0.0j], f.coeffs])
    trunc_deg = f.truncation_degree + 1 if f.truncated else None
    return TaylorSeries1D(out, f.truncated, trunc_deg)


def poly_eval(p: TaylorSeries1D, z):
    """Evaluate sum p_k z^k by Horner's scheme (scalar or array argument)."""
    zz = np.asarray(z, dtype=complex)
    acc = np.full_like(zz, p.coeffs[-1])
    for k in range(len(p.coeffs) - 2, -1, -1):
        acc = acc * zz + p.coeffs[k]
    if np.isscalar(z) or zz.ndim == 0:
        return complex(acc)
    return acc


# ---------------------------------------------------------------------------
# function families
# ---------------------------------------------------------------------------

VARIANT_COEFFS = "coeffs"
VARIANT_ONE_MINUS_Z_POW = "one_minus_z_pow"
VARIANT_PROBLEM6 = "problem6"


@dataclass(frozen=True)
class FunctionSpec:
    """Declarative description of an input function.

    Variants:
      * explicit coefficients,
      * (1 - z)^a for positive real a,
      * (1-z)^beta [(z - e^{i theta})(z - e^{-i theta})]^gamma.

    ``truncation`` bounds the series expansion for non-polynomial
    (non-integer exponent) variants.
    """

    variant: str
    coeff_values: tuple | None = None
    a: float | None = None
    beta: float | None = None
    gamma: float | None = None
    theta: float | None = None
    truncation: int | None = None

    @staticmethod
    def from_coeffs(values) -> "FunctionSpec":
        return FunctionSpec(VARIANT_COEFFS, coeff_values=tuple(complex(v) for v in values))

    @staticmethod
    def one_minus_z_pow(a, truncation=None) -> "FunctionSpec":
        if not (a > 0 and math.isfinite(a)):
            raise ValueError("exponent a must be a positive finite real")
        return FunctionSpec(VARIANT_ONE_MINUS_Z_POW, a=float(a), truncation=truncation)

    @staticmethod
    def problem6(beta, gamma, theta, truncation=None) -> "FunctionSpec":
        if beta < 0 or gamma < 0:
            raise ValueError("beta and gamma must be nonnegative")
        if not (0.0 < theta <= math.pi):
            raise ValueError("theta must lie in (0, pi]")
        return FunctionSpec(
            VARIANT_PROBLEM6, beta=float(beta), gamma=float(gamma), theta=float(theta), truncation=truncation
        )

    @property
    def is_polynomial(self) -> bool:
        if self.variant == VARIANT_COEFFS:
            return True
        if self.variant == VARIANT_ONE_MINUS_Z_POW:
            return float(self.a).is_integer()
        return float(self.beta).is_integer() and float(self.gamma).is_integer()


def _is_integer(x: float) -> bool:
    return float(x).is_integer()


def _binomial_series(a: float, trunc: int) -> np.ndarray:
    """Coefficients of (1-z)^a: (-1)^k C(a, k), by the ratio recurrence."""
    c = np.empty(trunc + 1, dtype=complex)
    c[0] = 1.0
    for k in range(1, trunc + 1):
        c[k] = c[k - 1] * (k - 1.0 - a) / k
    return c


def _one_minus_z_int_pow(a: int) -> np.ndarray:
    return np.array([(-1) ** k * math.comb(a, k) for k in range(a + 1)], dtype=complex)


def pow_series(base: np.ndarray, exponent: float, trunc: int) -> np.ndarray:
    """Coefficients of p(z)^exponent given p(0) = 1, through degree trunc.

    Uses the logarithmic-derivative recurrence p g' = exponent p' g, which
    only needs the base coefficients and one division per term.
    """
    p = np.asarray(base, dtype=complex)
    if abs(p[0] - 1.0) > 1e-15:
        raise ValueError("power series expansion requires unit constant term")
    g = np.zeros(trunc + 1, dtype=complex)
    g[0] = 1.0
    dmax = len(p) - 1
    for m in range(1, trunc + 1):
        acc = 0.0 + 0.0j
        for j in range(1, min(m, dmax) + 1):
            acc += (exponent * j - (m - j)) * p[j] * g[m - j]
        g[m] = acc / m
    return g


def materialize(spec: FunctionSpec, default_truncation: int | None = None) -> TaylorSeries1D:
    """Build the coefficient sequence described by a FunctionSpec.

    Integer exponents produce exact polynomials; non-integer exponents
    produce truncated expansions and require a truncation degree (either
    on the spec or via ``default_truncation``).
    """
    if spec.variant == VARIANT_COEFFS:
        return TaylorSeries1D(np.asarray(spec.coeff_values, dtype=complex))

    trunc = spec.truncation if spec.truncation is not None else default_truncation

    if spec.variant == VARIANT_ONE_MINUS_Z_POW:
        if _is_integer(spec.a):
            return TaylorSeries1D(_one_minus_z_int_pow(int(spec.a)))
        if trunc is None:
            raise ValueError("non-integer exponent requires a truncation degree")
        return TaylorSeries1D(_binomial_series(spec.a, trunc), truncated=True, truncation_degree=trunc)

    if spec.variant == VARIANT_PROBLEM6:
        beta, gamma, theta = spec.beta, spec.gamma, spec.theta
        quad = np.array([1.0, -2.0 * math.cos(theta), 1.0], dtype=complex)
        exact = _is_integer(beta) and _is_integer(gamma)
        if not exact and trunc is None:
            raise ValueError("non-integer exponents require a truncation degree")

        if _is_integer(beta):
            first = TaylorSeries1D(_one_minus_z_int_pow(int(beta)))
        else:
            first = TaylorSeries1D(_binomial_series(beta, trunc), truncated=True, truncation_degree=trunc)

        if _is_integer(gamma):
            g = int(gamma)
            acc = np.array([1.0 + 0.0j])
            for _ in range(g):
                acc = np.convolve(acc, quad)
            second = TaylorSeries1D(acc)
        else:
            second = TaylorSeries1D(pow_series(quad, gamma, trunc), truncated=True, truncation_degree=trunc)

        return multiply(first, second)

    raise ValueError(f"unknown function variant: {spec.variant!r}")


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------


def complex_to_pair(z) -> list:
    z = complex(z)
    # + 0.0 normalizes IEEE negative zero left behind by conjugation
    return [z.real + 0.0, z.imag + 0.0]


def pair_to_complex(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def function_spec_from_json(data) -> FunctionSpec:
    """Parse the published function-description schema.

    Accepts a dict or a JSON string of shape
      {"type": "coeffs", "values": [[re, im], ...]}
      {"type": "one_minus_z_pow", "a": number}
      {"type": "problem6", "beta": number, "gamma": number, "theta": number}
    with an optional integer "truncation".
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "type" not in data:
        raise ValueError("function description must be an object with a 'type' key")
    kind = data["type"]
    trunc = data.get("truncation")
    if trunc is not None:
        trunc = int(trunc)
        if trunc <= 0:
            raise ValueError("truncation must be a positive integer")
    if kind == "coeffs":
        values = [pair_to_complex(v) for v in data["values"]]
        if not values:
            raise ValueError("coefficient list must be nonempty")
        spec = FunctionSpec.from_coeffs(values)
        return FunctionSpec(spec.variant, coeff_values=spec.coeff_values, truncation=trunc)
    if kind == "one_minus_z_pow":
        return FunctionSpec.one_minus_z_pow(float(data["a"]), truncation=trunc)
    if kind == "problem6":
        return FunctionSpec.problem6(
            float(data["beta"]), float(data["gamma"]), float(data["theta"]), truncation=trunc
        )
    raise ValueError(f"unknown function type: {kind!r}")


def function_spec_to_json(spec: FunctionSpec) -> dict:
    out: dict = {}
    if spec.variant == VARIANT_COEFFS:
        out = {"type": "coeffs", "values": [complex_to_pair(v) for v in spec.coeff_values]}
    elif spec.variant == VARIANT_ONE_MINUS_Z_POW:
        out = {"type": "one_minus_z_pow", "a": spec.a}
    elif spec.variant == VARIANT_PROBLEM6:
        out = {"type": "problem6", "beta": spec.beta, "gamma": spec.gamma, "theta": spec.theta}
    if spec.truncation is not None:
        out["truncation"] = spec.truncation
    return out
