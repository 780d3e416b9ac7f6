import numpy as np
import numpy.testing as npt
import pytest

from piaspline import bspline
from piaspline.banded import BandedMatrix, sign_conjugate, comparison_matrix
from piaspline.collocation import (
    CollocationSystem,
    apply_Q,
    assemble_collocation,
    assemble_QB_closed,
    assemble_S,
    q_inverse_dense,
    split_parts,
)
from piaspline.errors import NonpositiveDiagonal

from conftest import random_system


class TestAssembleB:
    def test_shape_and_bands(self, duck_system):
        b = duck_system.matrix
        assert b.n == 41
        assert (b.lower, b.upper) == (1, 1)
        assert duck_system.rhs.shape == (41, 2)

    def test_identity_rows(self, duck_system):
        dense = duck_system.matrix.to_dense()
        npt.assert_array_equal(dense[0], np.eye(41)[0])
        npt.assert_array_equal(dense[-1], np.eye(41)[-1])

    def test_rows_sum_to_one(self):
        rng = np.random.default_rng(20)
        for _ in range(50):
            sys = random_system(rng)
            sums = sys.matrix.to_dense().sum(axis=1)
            npt.assert_allclose(sums, 1.0, atol=1e-13)

    def test_entries_nonnegative(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            sys = random_system(rng)
            assert sys.matrix.to_dense().min() >= 0.0

    def test_rows_are_basis_values(self, duck_system):
        dense = duck_system.matrix.to_dense()
        params = duck_system.params
        knots = duck_system.knots
        for r in range(1, 40):
            for c in range(max(0, r - 1), min(41, r + 2)):
                # column c holds the basis function at signed index c - 1
                expect = bspline.basis_eval(knots, c - 1, params[r])
                assert abs(dense[r, c] - expect) <= 1e-15

    def test_uniform_interior_row(self):
        n = 16
        pts = np.stack([np.linspace(0, 1, n), np.zeros(n)], axis=1)
        sys = assemble_collocation(pts, params=np.linspace(0.0, 1.0, n))
        dense = sys.matrix.to_dense()
        for r in range(4, n - 4):
            npt.assert_allclose(
                dense[r, r - 1 : r + 2], [1 / 6, 2 / 3, 1 / 6], atol=1e-14
            )

    def test_consecutive_2x2_minors_nonnegative(self):
        rng = np.random.default_rng(22)
        for _ in range(100):
            sys = random_system(rng)
            d = sys.matrix.diagonal(0)
            up = sys.matrix.diagonal(1)
            lo = sys.matrix.diagonal(-1)
            minors = d[:-1] * d[1:] - up * lo
            assert minors.min() >= -1e-14

    def test_explicit_params_validated(self, duck):
        with pytest.raises(ValueError):
            assemble_collocation(duck, params=np.zeros(41))


class TestSplitParts:
    def test_reconstruction_identity(self):
        rng = np.random.default_rng(23)
        for _ in range(50):
            sys = random_system(rng)
            d, lo, up = split_parts(sys.matrix)
            rebuilt = d.minus(lo).minus(up).to_dense()
            npt.assert_array_equal(rebuilt, sys.matrix.to_dense())

    def test_parts_structure(self, duck_system):
        d, lo, up = split_parts(duck_system.matrix)
        dense = duck_system.matrix.to_dense()
        npt.assert_array_equal(d.to_dense(), np.diag(np.diag(dense)))
        npt.assert_array_equal(lo.to_dense(), -np.tril(dense, -1))
        npt.assert_array_equal(up.to_dense(), -np.triu(dense, 1))


class TestPreconditioner:
    def test_S_structure(self, duck_system):
        s = assemble_S(duck_system)
        dense = s.to_dense()
        b = duck_system.matrix.to_dense()
        assert dense[0, 1] == 0.0
        for i in range(1, 40):
            assert dense[i, i + 1] == -b[i, i + 1]
        # nothing else
        assert np.count_nonzero(dense) == np.count_nonzero(np.diag(dense, 1))

    def test_apply_Q_matches_dense(self, duck_system):
        rng = np.random.default_rng(24)
        s = assemble_S(duck_system)
        q_dense = np.eye(41) + s.to_dense()
        v = rng.standard_normal((41, 2))
        npt.assert_allclose(apply_Q(s, v), q_dense @ v, atol=1e-15)

    def test_closed_form_matches_band_product(self):
        rng = np.random.default_rng(25)
        for _ in range(100):
            sys = random_system(rng)
            psys = assemble_QB_closed(sys)
            product = psys.q.mul(sys.matrix)
            diff = np.abs(psys.matrix.to_dense() - product.to_dense()).max()
            assert diff <= 1e-14

    def test_closed_form_matches_dense_product(self, duck_system, duck_preconditioned):
        q = duck_preconditioned.q.to_dense()
        b = duck_system.matrix.to_dense()
        diff = np.abs(duck_preconditioned.matrix.to_dense() - q @ b).max()
        assert diff <= 1e-15

    def test_bandwidths(self, duck_preconditioned):
        qb = duck_preconditioned.matrix
        assert (qb.lower, qb.upper) == (1, 2)

    def test_identity_rows_preserved(self, duck_preconditioned):
        dense = duck_preconditioned.matrix.to_dense()
        n = dense.shape[0]
        npt.assert_array_equal(dense[0], np.eye(n)[0])
        npt.assert_array_equal(dense[-1], np.eye(n)[-1])
        # row n-1 loses its superdiagonal entry entirely
        assert dense[n - 2, n - 1] == 0.0

    def test_split_fields_reconstruct(self, duck_preconditioned):
        p = duck_preconditioned
        rebuilt = p.diag_part.minus(p.lower_part).minus(p.upper_part)
        npt.assert_array_equal(rebuilt.to_dense(), p.matrix.to_dense())

    def test_diagonal_positive(self):
        rng = np.random.default_rng(26)
        for _ in range(100):
            sys = random_system(rng)
            psys = assemble_QB_closed(sys)
            assert psys.diag_part.diagonal(0).min() > 0.0

    def test_nonpositive_diagonal_guard(self):
        # hand-built tridiagonal whose correction wipes out a diagonal:
        # row 1 diag 0.1 with superdiagonal 0.8, row 2 subdiagonal 0.8
        b = BandedMatrix(4, 1, 1)
        b.set(0, 0, 1.0)
        b.set(3, 3, 1.0)
        b.set(1, 0, 0.1)
        b.set(1, 1, 0.1)
        b.set(1, 2, 0.8)
        b.set(2, 1, 0.8)
        b.set(2, 2, 0.15)
        b.set(2, 3, 0.05)
        sys = CollocationSystem(
            matrix=b,
            knots=np.zeros(10),
            params=np.linspace(0, 1, 4),
            rhs=np.zeros((4, 2)),
        )
        with pytest.raises(NonpositiveDiagonal):
            assemble_QB_closed(sys)


class TestSignStructure:
    def test_comparison_equals_sign_conjugate(self):
        rng = np.random.default_rng(27)
        for _ in range(100):
            sys = random_system(rng)
            qb = assemble_QB_closed(sys).matrix
            lhs = comparison_matrix(qb).to_dense()
            rhs = sign_conjugate(qb).to_dense()
            assert np.abs(lhs - rhs).max() <= 1e-14

    def test_comparison_inverse_nonnegative(self):
        rng = np.random.default_rng(28)
        for _ in range(100):
            sys = random_system(rng)
            qb = assemble_QB_closed(sys).matrix
            inv = np.linalg.inv(comparison_matrix(qb).to_dense())
            assert inv.min() >= -1e-10

    def test_q_inverse_closed_form(self):
        rng = np.random.default_rng(29)
        for _ in range(100):
            sys = random_system(rng)
            psys = assemble_QB_closed(sys)
            inv = q_inverse_dense(psys)
            n = sys.matrix.n
            resid = np.abs(psys.q.to_dense() @ inv - np.eye(n)).max()
            assert resid <= 1e-12
            npt.assert_allclose(inv, np.linalg.inv(psys.q.to_dense()), atol=1e-10)

    def test_q_inverse_accepts_plain_system(self, duck_system):
        inv = q_inverse_dense(duck_system)
        psys = assemble_QB_closed(duck_system)
        npt.assert_array_equal(inv, q_inverse_dense(psys))
