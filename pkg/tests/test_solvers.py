import math

import numpy as np
import numpy.testing as npt
import pytest

from piaspline import bspline
from piaspline.collocation import apply_Q
from piaspline.errors import (
    DegenerateSpectrum,
    InsufficientHistory,
    MissingOmega,
    NotConverged,
    OmegaOutOfRange,
    RhoOutOfRange,
    ZeroError,
)
from piaspline.banded import BandedMatrix
from piaspline.solvers import (
    FAMILIES,
    IterationTrace,
    MethodConfig,
    contraction_rate,
    iteration_spectral_radius,
    optimal_omega_sor,
    optimal_omega_weighted,
    resolve_omega,
    solve,
    splitting_parts,
)

ALL_LABELS = ("pia", "wpia", "jacobi", "gs", "sor")


def config_grid():
    for family in ALL_LABELS:
        for precond in (False, True):
            yield MethodConfig(family=family, preconditioned=precond)


class TestMethodConfig:
    def test_aliases(self):
        assert MethodConfig("pia").family == "richardson"
        assert MethodConfig("gs").family == "gauss_seidel"
        assert MethodConfig("wpia").family == "weighted_richardson"

    def test_labels(self):
        assert MethodConfig("pia").label == "pia"
        assert MethodConfig("sor", preconditioned=True).label == "psor"
        assert MethodConfig("jacobi", preconditioned=True).label == "pjacobi"

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            MethodConfig("conjugate_gradient")

    def test_omega_validation(self):
        assert MethodConfig("sor", omega=1.5).omega == 1.5
        for bad in (0.0, 2.0, -1.0, 2.5):
            with pytest.raises(OmegaOutOfRange):
                MethodConfig("sor", omega=bad)

    def test_omega_auto_kept(self):
        assert MethodConfig("wpia").omega == "auto"


class TestSplittingParts:
    def test_m_minus_n_is_a(self, duck_system):
        a = duck_system.matrix
        for family in FAMILIES:
            omega = 1.3 if family in ("weighted_richardson", "sor") else None
            split = splitting_parts(a, family, omega)
            diff = split.m.plus(split.n_mat, sign=-1.0).to_dense()
            npt.assert_allclose(diff, a.to_dense(), atol=1e-15)

    def test_missing_omega(self, duck_system):
        for family in ("weighted_richardson", "sor"):
            with pytest.raises(MissingOmega):
                splitting_parts(duck_system.matrix, family)
            with pytest.raises(MissingOmega):
                splitting_parts(duck_system.matrix, family, "auto")

    def test_omega_out_of_range(self, duck_system):
        with pytest.raises(OmegaOutOfRange):
            splitting_parts(duck_system.matrix, "sor", 2.0)

    def test_richardson_step_is_residual_correction(self, duck_system):
        a = duck_system.matrix
        b = duck_system.rhs
        split = splitting_parts(a, "richardson")
        x = b.copy()
        for _ in range(3):
            manual = x + (b - a.matvec(x))
            x = split.step(x, b)
            npt.assert_allclose(x, manual, atol=1e-15)

    def test_jacobi_step_matches_dense(self, duck_system):
        a = duck_system.matrix
        dense = a.to_dense()
        b = duck_system.rhs
        d = np.diag(dense)
        split = splitting_parts(a, "jacobi")
        x = b.copy()
        for _ in range(3):
            manual = x + (b - dense @ x) / d[:, None]
            x = split.step(x, b)
            npt.assert_allclose(x, manual, atol=1e-14)

    def test_gauss_seidel_step_matches_dense(self, duck_system):
        a = duck_system.matrix
        dense = a.to_dense()
        b = duck_system.rhs
        split = splitting_parts(a, "gauss_seidel")
        m = np.tril(dense)
        x = b.copy()
        for _ in range(3):
            manual = np.linalg.solve(m, b - np.triu(dense, 1) @ x)
            x = split.step(x, b)
            npt.assert_allclose(x, manual, atol=1e-13)

    def test_sor_step_matches_dense(self, duck_system):
        a = duck_system.matrix
        dense = a.to_dense()
        b = duck_system.rhs
        omega = 1.4
        split = splitting_parts(a, "sor", omega)
        m = np.diag(np.diag(dense)) / omega + np.tril(dense, -1)
        n_mat = m - dense
        x = b.copy()
        for _ in range(3):
            manual = np.linalg.solve(m, n_mat @ x + b)
            x = split.step(x, b)
            npt.assert_allclose(x, manual, atol=1e-13)


class TestOmegaRules:
    def test_weighted_formula(self):
        a = BandedMatrix.from_dense(np.diag([0.25, 0.5, 1.0]), 0, 0)
        omega, lo, hi = optimal_omega_weighted(a)
        assert (lo, hi) == (0.25, 1.0)
        assert abs(omega - 2.0 / 1.25) <= 1e-15

    def test_weighted_degenerate(self):
        with pytest.raises(DegenerateSpectrum):
            optimal_omega_weighted(BandedMatrix(3, 0, 0))

    def test_sor_formula(self):
        assert optimal_omega_sor(0.0) == 1.0
        rho = 0.6
        expect = 2.0 / (1.0 + math.sqrt(1.0 - 0.36))
        assert abs(optimal_omega_sor(rho) - expect) <= 1e-15
        assert 1.0 <= optimal_omega_sor(0.999999) < 2.0

    def test_sor_rho_out_of_range(self):
        for bad in (1.0, 1.5, -0.1):
            with pytest.raises(RhoOutOfRange):
                optimal_omega_sor(bad)

    def test_resolve_omega_paths(self, duck_system):
        a = duck_system.matrix
        omega, secs = resolve_omega(a, MethodConfig("pia"))
        assert omega is None and secs == 0.0
        omega, secs = resolve_omega(a, MethodConfig("sor", omega=1.2))
        assert omega == 1.2 and secs == 0.0
        omega, secs = resolve_omega(a, MethodConfig("wpia"))
        assert 0.0 < omega < 2.0 and secs > 0.0


class TestSolve:
    def test_all_methods_interpolate_duck(self, duck):
        for config in config_grid():
            result = solve(duck, config, tol=1e-10)
            trace = result.trace
            assert trace.converged
            assert trace.errors[-1] <= 1e-10
            assert result.control.shape == (43, 2)
            npt.assert_array_equal(result.control[0], result.control[1])
            npt.assert_array_equal(result.control[-1], result.control[-2])
            # fitted curve passes through the data at the parameters
            for i in (0, 7, 20, 40):
                p = bspline.curve_eval(result.knots, result.control, result.params[i])
                assert np.linalg.norm(p - duck[i]) <= 1e-9

    def test_preconditioning_reduces_iterations(self, duck):
        for family in ALL_LABELS:
            plain = solve(duck, MethodConfig(family), tol=1e-12).trace.iterations
            pre = solve(
                duck, MethodConfig(family, preconditioned=True), tol=1e-12
            ).trace.iterations
            if family in ("pia", "jacobi", "gs"):
                assert pre < plain, family
            else:
                # weighted variants converge in so few sweeps that the
                # counts can tie
                assert pre <= plain, family

    def test_errors_are_per_sweep(self, duck):
        result = solve(duck, MethodConfig("pia"), tol=1e-8)
        trace = result.trace
        assert len(trace.errors) == trace.iterations + 1
        assert trace.errors[0] > trace.errors[-1]
        assert trace.errors[-1] <= 1e-8 < trace.errors[-2]

    def test_initial_error_is_data_residual(self, duck, duck_system):
        result = solve(duck, MethodConfig("pia"), tol=1e-8)
        resid = duck - duck_system.matrix.matvec(duck)
        expect = float(np.max(np.linalg.norm(resid, axis=1)))
        assert result.trace.errors[0] == expect

    def test_not_converged_carries_result(self, duck):
        with pytest.raises(NotConverged) as info:
            solve(duck, MethodConfig("pia"), tol=1e-12, max_iter=3)
        result = info.value.result
        assert result.trace.iterations == 3
        assert not result.trace.converged
        assert len(result.trace.errors) == 4
        assert result.control.shape == (43, 2)

    def test_zero_sweeps_when_tolerance_loose(self, duck):
        result = solve(duck, MethodConfig("pia"), tol=1e3)
        assert result.trace.iterations == 0
        assert result.trace.converged
        assert math.isnan(result.trace.contraction_estimate)

    def test_explicit_params_respected(self, duck):
        params = np.linspace(0.0, 1.0, 41)
        result = solve(duck, MethodConfig("pia"), params=params, tol=1e-8)
        npt.assert_array_equal(result.params, params)

    def test_uniform_scheme(self, duck):
        result = solve(duck, MethodConfig("pia"), scheme="uniform", tol=1e-8)
        npt.assert_array_equal(result.params, np.linspace(0, 1, 41))

    def test_omega_seconds_separated(self, duck):
        trace = solve(duck, MethodConfig("wpia"), tol=1e-8).trace
        assert trace.omega_seconds > 0.0
        assert trace.omega_used is not None
        trace = solve(duck, MethodConfig("pia"), tol=1e-8).trace
        assert trace.omega_seconds == 0.0
        assert trace.omega_used is None

    def test_contraction_estimate_is_last_ratio(self, duck):
        trace = solve(duck, MethodConfig("pia"), tol=1e-8).trace
        expect = trace.errors[-1] / trace.errors[-2]
        assert trace.contraction_estimate == expect

    def test_preconditioned_rhs_is_Qp(self, duck_system, duck_preconditioned):
        # one preconditioned Richardson sweep equals the hand-rolled
        # update with b = Q p
        qb = duck_preconditioned.matrix
        b = apply_Q(duck_preconditioned.s, duck_system.rhs)
        x = duck_system.rhs.copy()
        x1 = x + (b - qb.matvec(x))
        split = splitting_parts(qb, "richardson")
        npt.assert_allclose(split.step(x, b), x1, atol=1e-15)


class TestSpectralRadiusOfIteration:
    def test_duck_pia_pinned(self, duck):
        rho = iteration_spectral_radius(duck, MethodConfig("pia"))
        assert abs(rho - 0.68899385) <= 1e-6

    def test_matches_dense_construction(self, duck, duck_system):
        dense = duck_system.matrix.to_dense()
        for family, omega in (("jacobi", None), ("gauss_seidel", None), ("sor", 1.3)):
            if family == "jacobi":
                m = np.diag(np.diag(dense))
            elif family == "gauss_seidel":
                m = np.tril(dense)
            else:
                m = np.diag(np.diag(dense)) / omega + np.tril(dense, -1)
            g = np.eye(41) - np.linalg.solve(m, dense)
            expect = float(np.max(np.abs(np.linalg.eigvals(g))))
            config = MethodConfig(family, omega=omega if omega is not None else "auto")
            got = iteration_spectral_radius(duck, config)
            # over-relaxed spectra cluster on a circle, so eigensolves
            # only agree to ~1e-9 there
            assert abs(got - expect) <= 1e-7

    def test_power_mode_close_to_dense(self, duck):
        # the residual-correction iteration matrix I - B has a single
        # dominant modulus, so the matrix-free estimate must agree
        r_dense = iteration_spectral_radius(duck, MethodConfig("pia"))
        r_power = iteration_spectral_radius(
            duck, MethodConfig("pia"), mode="power_iteration"
        )
        assert abs(r_dense - r_power) <= 1e-6


class TestContractionRate:
    def test_exact_geometric_sequence(self):
        rho = 0.37
        errors = 3.0 * rho ** np.arange(15)
        trace = IterationTrace(errors=errors, iterations=14, converged=True)
        rate = contraction_rate(trace, window=10)
        assert abs(rate - rho) <= 1e-13

    def test_insufficient_history(self):
        trace = IterationTrace(errors=np.ones(5), iterations=4, converged=False)
        with pytest.raises(InsufficientHistory):
            contraction_rate(trace, window=10)

    def test_zero_error_in_window(self):
        errors = np.concatenate([np.geomspace(1, 1e-6, 10), [0.0]])
        trace = IterationTrace(errors=errors, iterations=10, converged=True)
        with pytest.raises(ZeroError):
            contraction_rate(trace, window=10)

    def test_window_uses_tail_only(self):
        errors = np.concatenate([[100.0, 50.0], 2.0 * 0.5 ** np.arange(12)])
        trace = IterationTrace(errors=errors, iterations=13, converged=True)
        assert abs(contraction_rate(trace, window=10) - 0.5) <= 1e-13


class TestOmegaDegeneracy:
    def test_weighted_one_equals_richardson(self, duck):
        base = solve(duck, MethodConfig("pia"), tol=1e-10)
        weighted = solve(duck, MethodConfig("wpia", omega=1.0), tol=1e-10)
        npt.assert_array_equal(base.trace.errors, weighted.trace.errors)
        npt.assert_array_equal(base.control, weighted.control)

    def test_sor_one_equals_gauss_seidel(self, duck):
        base = solve(duck, MethodConfig("gs"), tol=1e-10)
        relaxed = solve(duck, MethodConfig("sor", omega=1.0), tol=1e-10)
        npt.assert_array_equal(base.trace.errors, relaxed.trace.errors)
        npt.assert_array_equal(base.control, relaxed.control)
