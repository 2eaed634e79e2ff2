import numpy as np
import pytest

from optapprox import (
    DIRICHLET,
    HARDY,
    FunctionSpec,
    build_system,
    detect_structure,
    dirichlet_moment_closed_form,
    hardy_moment_closed_form,
    inner_moment_profile,
    materialize,
    moment,
    series,
)
from optapprox.gram import (
    STRUCTURE_GENERIC,
    STRUCTURE_TOEPLITZ,
    STRUCTURE_TWO_ISOMETRY,
    gram_from_json,
    gram_to_json,
)

from helpers import brute_force_gram, random_complex_poly


class TestMoment:
    def test_one_minus_z_offdiag(self):
        assert moment(series([1, -1]), 1, 0, HARDY) == pytest.approx(-1.0)

    def test_one_minus_z_squared_diag(self):
        assert moment(series([1, -2, 1]), 0, 0, HARDY) == pytest.approx(6.0)

    def test_dirichlet_offdiag(self):
        assert moment(series([1, -1]), 1, 0, DIRICHLET) == pytest.approx(-2.0)

    def test_rejects_negative_indices(self):
        with pytest.raises(ValueError):
            moment(series([1]), -1, 0, HARDY)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            f = random_complex_poly(rng, max_degree=6)
            alpha = rng.uniform(-2, 2)
            n = int(rng.integers(0, 5))
            m, _ = brute_force_gram(f.coeffs, n, alpha)
            for j in range(n + 1):
                for k in range(n + 1):
                    assert moment(f, j, k, alpha) == pytest.approx(complex(m[j, k]), rel=1e-12, abs=1e-12)


class TestBuildSystem:
    def test_one_minus_z_n2(self):
        system = build_system(series([1, -1]), 2, HARDY)
        expected = np.array([[2, -1, 0], [-1, 2, -1], [0, -1, 2]], dtype=complex)
        np.testing.assert_allclose(system.matrix, expected, atol=1e-14)
        np.testing.assert_allclose(system.rhs, [1, 0, 0], atol=1e-15)
        assert system.structure == STRUCTURE_TOEPLITZ

    def test_constant_weighted_identity(self):
        alpha = 0.8
        system = build_system(series([1]), 1, alpha)
        np.testing.assert_allclose(system.matrix, np.diag([1.0, 2.0**alpha]), atol=1e-14)
        np.testing.assert_allclose(system.rhs, [1, 0], atol=1e-15)

    def test_one_minus_z_squared_n2(self):
        system = build_system(series([1, -2, 1]), 2, HARDY)
        expected = np.array([[6, -4, 1], [-4, 6, -4], [1, -4, 6]], dtype=complex)
        np.testing.assert_allclose(system.matrix, expected, atol=1e-14)
        np.testing.assert_allclose(system.rhs, [1, 0, 0], atol=1e-15)

    def test_rejects_zero_function(self):
        with pytest.raises(ValueError, match="zero"):
            build_system(series([0, 0]), 2, HARDY)

    def test_hermitian_and_positive_definite(self):
        rng = np.random.default_rng(5)
        for _ in range(30):
            f = random_complex_poly(rng, max_degree=7)
            alpha = float(rng.uniform(-2, 2))
            n = int(rng.integers(0, 9))
            system = build_system(f, n, alpha)
            m = system.matrix
            scale = np.max(np.abs(m))
            assert np.max(np.abs(m - m.conj().T)) <= 1e-14 * scale
            # smallest Cholesky pivot positive
            lower = np.linalg.cholesky(m)
            assert np.min(np.diag(lower).real) > 0.0

    def test_rhs_single_entry_is_conj_a0(self):
        rng = np.random.default_rng(6)
        for _ in range(20):
            f = random_complex_poly(rng, max_degree=5)
            system = build_system(f, 4, rng.uniform(-1, 1))
            assert system.rhs[0] == pytest.approx(np.conj(f.coeffs[0]))
            np.testing.assert_allclose(system.rhs[1:], 0.0, atol=1e-15)

    def test_matches_brute_force(self):
        rng = np.random.default_rng(12)
        for _ in range(10):
            f = random_complex_poly(rng, max_degree=5)
            alpha = float(rng.uniform(-2, 2))
            n = int(rng.integers(0, 6))
            system = build_system(f, n, alpha)
            m, b = brute_force_gram(f.coeffs, n, alpha)
            np.testing.assert_allclose(system.matrix, m, rtol=1e-12, atol=1e-12)
            np.testing.assert_allclose(system.rhs, b, rtol=1e-12, atol=1e-12)


class TestDetectStructure:
    def test_hardy_polynomials_are_toeplitz(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            f = random_complex_poly(rng, max_degree=6)
            system = build_system(f, int(rng.integers(2, 8)), HARDY)
            assert system.structure == STRUCTURE_TOEPLITZ

    def test_dirichlet_polynomials_are_two_isometry(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            f = random_complex_poly(rng, max_degree=6)
            system = build_system(f, int(rng.integers(2, 8)), DIRICHLET)
            assert system.structure == STRUCTURE_TWO_ISOMETRY

    def test_bergman_like_weight_is_generic(self):
        system = build_system(series([1, -1]), 2, -1.0)
        assert system.structure == STRUCTURE_GENERIC

    def test_detect_structure_function(self):
        system = build_system(series([1, -1]), 3, HARDY)
        assert detect_structure(system) == STRUCTURE_TOEPLITZ

    def test_toeplitz_invariance_exact(self):
        # unweighted moments depend on j - k only, exactly
        rng = np.random.default_rng(9)
        f = random_complex_poly(rng, max_degree=6)
        n = 6
        system = build_system(f, n, HARDY)
        for d in range(-n, n + 1):
            diag = np.diagonal(system.matrix, offset=d)
            np.testing.assert_allclose(diag, diag[0], rtol=0, atol=1e-13 * np.max(np.abs(system.matrix)))

    def test_two_isometry_identity_entrywise(self):
        rng = np.random.default_rng(10)
        for _ in range(10):
            f = random_complex_poly(rng, max_degree=6)
            system = build_system(f, int(rng.integers(2, 9)), DIRICHLET)
            m = system.matrix
            second_diff = m[:-2, :-2] - 2.0 * m[1:-1, 1:-1] + m[2:, 2:]
            assert np.max(np.abs(second_diff)) <= 1e-12 * np.max(np.abs(m))


class TestClosedFormMoments:
    def test_hardy_diagonal(self):
        assert hardy_moment_closed_form(1, 3, 3) == 2

    def test_hardy_corner(self):
        assert hardy_moment_closed_form(2, 2, 0) == 1

    def test_hardy_out_of_range(self):
        assert hardy_moment_closed_form(3, 0, 7) == 0

    def test_dirichlet_values(self):
        assert dirichlet_moment_closed_form(1, 0, 0) == pytest.approx(3.0)
        assert dirichlet_moment_closed_form(1, 1, 0) == pytest.approx(-2.0)
        assert dirichlet_moment_closed_form(1, 5, 0) == 0.0

    @pytest.mark.parametrize("a", [1, 2, 3, 4, 5, 6])
    def test_oracle_equivalence(self, a):
        f = materialize(FunctionSpec.one_minus_z_pow(a))
        for j in range(0, 21, 4):
            for k in range(0, 21, 4):
                got_h = moment(f, j, k, HARDY)
                want_h = hardy_moment_closed_form(a, j, k)
                assert got_h == pytest.approx(want_h, rel=1e-12, abs=1e-12)
                got_d = moment(f, j, k, DIRICHLET)
                want_d = dirichlet_moment_closed_form(a, j, k)
                assert got_d == pytest.approx(want_d, rel=1e-12, abs=1e-12)


class TestInnerMomentProfile:
    def test_monomial_is_inner(self):
        prof = inner_moment_profile(series([0, 0, 1]), 3, HARDY)
        np.testing.assert_allclose(prof, 0.0, atol=1e-15)

    def test_one_minus_z(self):
        prof = inner_moment_profile(series([1, -1]), 2, HARDY)
        np.testing.assert_allclose(prof, [-1.0, 0.0], atol=1e-14)

    def test_blaschke_factor_truncation(self):
        # (z - 1/2) / (1 - z/2) expanded through degree 64
        deg = 64
        coeffs = np.zeros(deg + 1)
        coeffs[0] = -0.5
        for k in range(1, deg + 1):
            coeffs[k] = 0.75 * 0.5 ** (k - 1)
        prof = inner_moment_profile(series(coeffs, truncated=True), 8, HARDY)
        assert np.max(np.abs(prof)) <= 1e-9

    def test_warns_outside_hardy(self):
        with pytest.warns(UserWarning, match="alpha=0"):
            inner_moment_profile(series([1, -1]), 2, DIRICHLET)

    def test_rejects_bad_jmax(self):
        with pytest.raises(ValueError):
            inner_moment_profile(series([1, -1]), 0, HARDY)


class TestSerialization:
    def test_roundtrip(self):
        system = build_system(series([1, -1j]), 3, 0.5)
        data = gram_to_json(system)
        assert data["structure"] == system.structure
        back = gram_from_json(data)
        np.testing.assert_allclose(back.matrix, system.matrix)
        np.testing.assert_allclose(back.rhs, system.rhs)
        assert back.n == system.n and back.alpha == system.alpha
