import math

import numpy as np
import pytest

from optapprox import (
    HARDY,
    ConditioningWarning,
    FunctionSpec,
    GramSystem,
    NotPositiveDefiniteError,
    build_system,
    cholesky_solve,
    condition_estimate,
    levinson_solve,
    materialize,
    series,
    solve_system,
)
from optapprox.gram import STRUCTURE_GENERIC, STRUCTURE_TOEPLITZ
from optapprox.solve import prefix_solutions

from helpers import random_complex_poly


def _toeplitz_system(first_col, rhs):
    n = len(first_col) - 1
    m = np.empty((n + 1, n + 1), dtype=complex)
    for j in range(n + 1):
        for k in range(n + 1):
            m[j, k] = first_col[j - k] if j >= k else np.conj(first_col[k - j])
    return GramSystem(m, np.asarray(rhs, dtype=complex), n, 0.0, STRUCTURE_TOEPLITZ)


TRIDIAG_A1 = _toeplitz_system([2.0, -1.0, 0.0], [1.0, 0.0, 0.0])
SYSTEM_A2 = _toeplitz_system([6.0, -4.0, 1.0], [1.0, 0.0, 0.0])


class TestCholesky:
    def test_a1_system(self):
        report = cholesky_solve(TRIDIAG_A1)
        np.testing.assert_allclose(report.solution, [0.75, 0.5, 0.25], atol=1e-14)
        assert report.solver == "cholesky"
        assert report.refined

    def test_identity(self):
        system = GramSystem(np.eye(2, dtype=complex), np.array([1.0, 0.0]), 1, 0.0, STRUCTURE_TOEPLITZ)
        report = cholesky_solve(system)
        np.testing.assert_allclose(report.solution, [1.0, 0.0], atol=1e-15)

    def test_a2_system(self):
        report = cholesky_solve(SYSTEM_A2)
        np.testing.assert_allclose(report.solution, [0.4, 0.4, 0.2], atol=1e-13)
        # back-substitution check
        np.testing.assert_allclose(SYSTEM_A2.matrix @ report.solution, SYSTEM_A2.rhs, atol=1e-13)

    def test_non_pd_rejected(self):
        bad = GramSystem(
            np.array([[1.0, 2.0], [2.0, 1.0]], dtype=complex),
            np.array([1.0, 0.0]),
            1,
            0.0,
            STRUCTURE_GENERIC,
        )
        with pytest.raises(NotPositiveDefiniteError):
            cholesky_solve(bad)


class TestLevinson:
    def test_a1_system(self):
        report = levinson_solve(TRIDIAG_A1)
        np.testing.assert_allclose(report.solution, [0.75, 0.5, 0.25], atol=1e-14)
        assert report.solver == "levinson"

    def test_one_by_one(self):
        system = GramSystem(np.array([[2.0]], dtype=complex), np.array([1.0]), 0, 0.0, STRUCTURE_TOEPLITZ)
        report = levinson_solve(system)
        np.testing.assert_allclose(report.solution, [0.5])

    def test_a2_system(self):
        report = levinson_solve(SYSTEM_A2)
        np.testing.assert_allclose(report.solution, [0.4, 0.4, 0.2], atol=1e-13)

    def test_rejects_non_toeplitz(self):
        system = build_system(series([1, -1]), 2, 1.0)
        with pytest.raises(ValueError, match="toeplitz"):
            levinson_solve(system)

    def test_agreement_with_cholesky(self):
        rng = np.random.default_rng(20)
        for _ in range(200):
            f = random_complex_poly(rng, max_degree=8)
            n = int(rng.integers(0, 25))
            system = build_system(f, n, HARDY)
            assert system.structure == STRUCTURE_TOEPLITZ
            x_lev = levinson_solve(system).solution
            x_cho = cholesky_solve(system).solution
            scale = max(np.max(np.abs(x_cho)), 1e-300)
            assert np.max(np.abs(x_lev - x_cho)) <= 1e-9 * scale


class TestConditionEstimate:
    def test_identity(self):
        system = GramSystem(np.eye(3, dtype=complex), np.zeros(3), 2, 0.0, STRUCTURE_TOEPLITZ)
        assert condition_estimate(system) == pytest.approx(1.0)

    def test_a1_tridiagonal(self):
        # exact eigenvalues 2 - sqrt(2), 2, 2 + sqrt(2)
        kappa = condition_estimate(TRIDIAG_A1)
        exact = (2 + math.sqrt(2)) / (2 - math.sqrt(2))
        assert exact / 3 <= kappa <= exact * 3

    def test_ill_conditioned_family_warns(self):
        f = materialize(FunctionSpec.one_minus_z_pow(4))
        system = build_system(f, 60, HARDY)
        assert condition_estimate(system) > 1e6
        with pytest.warns(ConditioningWarning):
            cholesky_solve(system)


class TestSolveSystem:
    def test_auto_picks_levinson_for_toeplitz(self):
        report = solve_system(build_system(series([1, -1]), 4, HARDY))
        assert report.solver == "levinson"

    def test_auto_picks_cholesky_otherwise(self):
        report = solve_system(build_system(series([1, -1]), 4, 1.0))
        assert report.solver == "cholesky"

    def test_unknown_method_rejected(self):
        with pytest.raises(ValueError, match="unknown solver"):
            solve_system(TRIDIAG_A1, method="qr")

    def test_deterministic_resolve(self):
        system = build_system(series([1, -0.3 + 0.4j, 0.2]), 9, HARDY)
        first = solve_system(system).solution
        second = solve_system(system).solution
        assert np.array_equal(first, second)

    def test_residual_invariant(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            f = random_complex_poly(rng, max_degree=6)
            n = int(rng.integers(0, 15))
            alpha = float(rng.choice([-1.0, 0.0, 1.0]))
            system = build_system(f, n, alpha)
            report = solve_system(system)
            bnorm = np.max(np.abs(system.rhs))
            if report.cond_estimate <= 1e10:
                assert report.residual_inf <= 1e-10 * bnorm

    def test_custom_rhs(self):
        rhs = np.array([1.0, 2.0, 3.0], dtype=complex)
        report = solve_system(TRIDIAG_A1, rhs=rhs)
        np.testing.assert_allclose(TRIDIAG_A1.matrix @ report.solution, rhs, atol=1e-12)


class TestPrefixSolutions:
    def test_matches_direct_solves_toeplitz(self):
        system = build_system(series([1, -1]), 12, HARDY)
        sols = prefix_solutions(system)
        for m, sol in enumerate(sols):
            sub = system.matrix[: m + 1, : m + 1]
            direct = np.linalg.solve(sub, system.rhs[: m + 1])
            np.testing.assert_allclose(sol, direct, atol=1e-11)

    def test_matches_direct_solves_generic(self):
        system = build_system(series([1, -0.5, 0.25j]), 10, -1.0)
        sols = prefix_solutions(system)
        for m, sol in enumerate(sols):
            sub = system.matrix[: m + 1, : m + 1]
            direct = np.linalg.solve(sub, system.rhs[: m + 1])
            np.testing.assert_allclose(sol, direct, atol=1e-11)
