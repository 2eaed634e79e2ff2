import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from optapprox import (
    DIRICHLET,
    HARDY,
    FunctionSpec,
    SpaceParam,
    TaylorSeries1D,
    function_spec_from_json,
    inner_product,
    materialize,
    multiply,
    norm_sq,
    poly_eval,
    series,
)
from optapprox.core import function_spec_to_json, pow_series


finite_coeffs = st.lists(
    st.complex_numbers(max_magnitude=1e3, allow_nan=False, allow_infinity=False),
    min_size=1,
    max_size=12,
)
alphas = st.floats(min_value=-4.0, max_value=4.0, allow_nan=False)


class TestInnerProduct:
    def test_one_minus_z_hardy(self):
        f = series([1, -1])
        assert inner_product(f, f, HARDY) == pytest.approx(2.0)

    def test_disjoint_monomials(self):
        assert inner_product(series([1]), series([0, 1]), SpaceParam(0.7)) == 0.0

    def test_one_minus_z_dirichlet(self):
        f = series([1, -1])
        assert inner_product(f, f, DIRICHLET) == pytest.approx(3.0)

    @given(finite_coeffs, finite_coeffs, alphas)
    @settings(max_examples=100, deadline=None)
    def test_conjugate_symmetry(self, cf, cg, alpha):
        f, g = series(cf), series(cg)
        lhs = inner_product(f, g, alpha)
        rhs = np.conj(inner_product(g, f, alpha))
        scale = max(1.0, abs(lhs))
        assert abs(lhs - rhs) <= 1e-14 * scale

    @given(finite_coeffs, finite_coeffs, alphas)
    @settings(max_examples=100, deadline=None)
    def test_cauchy_schwarz(self, cf, cg, alpha):
        f, g = series(cf), series(cg)
        lhs = abs(inner_product(f, g, alpha)) ** 2
        rhs = norm_sq(f, alpha) * norm_sq(g, alpha)
        assert lhs <= rhs + 1e-12 * max(1.0, rhs)


class TestNormSq:
    def test_one_minus_z(self):
        assert norm_sq(series([1, -1]), HARDY) == pytest.approx(2.0)

    def test_zero_series(self):
        assert norm_sq(series([0]), SpaceParam(1.3)) == 0.0

    def test_one_minus_z_squared(self):
        assert norm_sq(series([1, -2, 1]), HARDY) == pytest.approx(6.0)

    @given(finite_coeffs)
    @settings(max_examples=60, deadline=None)
    def test_matches_inner_product(self, cf):
        f = series(cf)
        assert norm_sq(f, 0.5) == pytest.approx(inner_product(f, f, 0.5).real, rel=1e-13, abs=1e-13)

    @given(finite_coeffs, alphas, alphas)
    @settings(max_examples=80, deadline=None)
    def test_monotone_in_weight(self, cf, a1, a2):
        f = series(cf)
        lo, hi = min(a1, a2), max(a1, a2)
        assert norm_sq(f, hi) >= norm_sq(f, lo) * (1.0 - 1e-12)


class TestMultiply:
    def test_square_of_one_minus_z(self):
        prod = multiply(series([1, -1]), series([1, -1]))
        np.testing.assert_array_equal(prod.coeffs, np.array([1, -2, 1], dtype=complex))

    def test_shift(self):
        prod = multiply(series([0, 1]), series([3, 2, 1]))
        np.testing.assert_array_equal(prod.coeffs, np.array([0, 3, 2, 1], dtype=complex))

    def test_difference_of_squares(self):
        prod = multiply(series([1, 1]), series([1, -1]))
        np.testing.assert_array_equal(prod.coeffs, np.array([1, 0, -1], dtype=complex))

    @pytest.mark.parametrize("a", [1, 2, 3, 5, 8, 13, 20])
    def test_power_matches_binomials(self, a):
        acc = series([1])
        base = series([1, -1])
        for _ in range(a):
            acc = multiply(acc, base)
        expected = materialize(FunctionSpec.one_minus_z_pow(a))
        np.testing.assert_array_equal(acc.coeffs, expected.coeffs)

    def test_truncation_propagates(self):
        half = materialize(FunctionSpec.one_minus_z_pow(0.5, truncation=6))
        prod = multiply(half, series([0, 1]))
        assert prod.truncated
        # shifting by z extends the reliable prefix by one
        assert prod.truncation_degree == 7


class TestMaterialize:
    def test_integer_exponent_exact(self):
        f = materialize(FunctionSpec.one_minus_z_pow(2))
        np.testing.assert_array_equal(f.coeffs, np.array([1, -2, 1], dtype=complex))
        assert not f.truncated

    def test_family_gamma_zero(self):
        f = materialize(FunctionSpec.problem6(1, 0, math.pi / 2))
        np.testing.assert_array_equal(f.coeffs, np.array([1, -1], dtype=complex))

    def test_square_root_series(self):
        f = materialize(FunctionSpec.one_minus_z_pow(0.5, truncation=3))
        np.testing.assert_allclose(f.coeffs.real, [1.0, -0.5, -0.125, -0.0625], atol=1e-15)
        assert f.truncated and f.truncation_degree == 3
        # squaring the truncation must reproduce 1 - z through degree 3
        sq = multiply(f, f)
        np.testing.assert_allclose(sq.coeffs[:4].real, [1, -1, 0, 0], atol=1e-14)

    def test_family_integer_exponents_exact(self):
        # (1-z)(z - i)(z + i) = (1-z)(z^2 + 1) at theta = pi/2
        f = materialize(FunctionSpec.problem6(1, 1, math.pi / 2))
        np.testing.assert_allclose(f.coeffs, np.array([1, -1, 1, -1], dtype=complex), atol=1e-14)
        assert not f.truncated

    def test_family_degree(self):
        f = materialize(FunctionSpec.problem6(2, 3, 1.0))
        assert f.degree == 2 + 2 * 3

    def test_missing_truncation_rejected(self):
        with pytest.raises(ValueError, match="truncation"):
            materialize(FunctionSpec.one_minus_z_pow(0.5))

    def test_non_integer_gamma_series(self):
        trunc = 24
        f = materialize(FunctionSpec.problem6(0, 0.5, math.pi / 3, truncation=trunc))
        # squaring recovers the exact quadratic through the usable range
        sq = multiply(f, f)
        expected = np.zeros(trunc + 1, dtype=complex)
        expected[0], expected[1], expected[2] = 1.0, -2.0 * math.cos(math.pi / 3), 1.0
        np.testing.assert_allclose(sq.coeffs, expected, atol=1e-12)


class TestPolyEval:
    def test_constant_term(self):
        assert poly_eval(series([0.75, 0.5, 0.25]), 0.0) == pytest.approx(0.75)

    def test_root_at_one(self):
        assert poly_eval(series([1, -1]), 1.0) == pytest.approx(0.0)

    def test_at_imaginary_unit(self):
        assert poly_eval(series([1, 2, 3]), 1j) == pytest.approx(-2 + 2j)

    def test_array_argument(self):
        p = series([1, 0, 1])
        vals = poly_eval(p, np.array([0.0, 1.0, 1j]))
        np.testing.assert_allclose(vals, [1.0, 2.0, 0.0])


class TestSeriesType:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            TaylorSeries1D(np.array([], dtype=complex))

    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            series([1.0, float("nan")])

    def test_effective_degree_thresholds_roundoff(self):
        f = series([1.0, 1.0, 1e-16])
        assert f.effective_degree == 1

    def test_effective_degree_zero_series(self):
        assert series([0, 0]).effective_degree == -1

    def test_immutable(self):
        f = series([1, 2])
        with pytest.raises(ValueError):
            f.coeffs[0] = 5.0


class TestPowSeries:
    def test_integer_power_matches_convolution(self):
        base = np.array([1.0, -0.7, 0.2])
        direct = np.convolve(np.convolve(base, base), base)
        viaseries = pow_series(base, 3.0, len(direct) - 1)
        np.testing.assert_allclose(viaseries, direct, atol=1e-13)

    def test_requires_unit_constant(self):
        with pytest.raises(ValueError):
            pow_series(np.array([2.0, 1.0]), 0.5, 4)


class TestFunctionSpecJson:
    def test_coeffs_roundtrip(self):
        spec = function_spec_from_json('{"type":"coeffs","values":[[1,0],[-1,0.5]]}')
        assert materialize(spec).coeffs[1] == -1 + 0.5j
        assert function_spec_to_json(spec)["type"] == "coeffs"

    def test_power_roundtrip(self):
        spec = function_spec_from_json({"type": "one_minus_z_pow", "a": 3})
        assert function_spec_to_json(spec) == {"type": "one_minus_z_pow", "a": 3.0}

    def test_problem6_with_truncation(self):
        raw = {"type": "problem6", "beta": 0.5, "gamma": 1.0, "theta": 1.0, "truncation": 32}
        spec = function_spec_from_json(json.dumps(raw))
        assert spec.truncation == 32
        assert materialize(spec).truncation_degree == 32

    def test_unknown_type_rejected(self):
        with pytest.raises(ValueError, match="unknown function type"):
            function_spec_from_json({"type": "mystery"})

    def test_invalid_theta_rejected(self):
        with pytest.raises(ValueError, match="theta"):
            function_spec_from_json({"type": "problem6", "beta": 1, "gamma": 1, "theta": 0.0})
