import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from beamsel.errors import NumericalFailure, SingularGram
from beamsel.linalg import (as_matrix, gram, hermitian_eig, hermitian_inverse,
                            pinv_fro_norm_sq, sherman_morrison_downdate,
                            trace_inverse)

from conftest import crandn


class TestGram:
    def test_hand(self, hand):
        np.testing.assert_allclose(gram(hand), [[2, 1], [1, 2]])

    def test_identity_and_zero(self):
        np.testing.assert_allclose(gram(np.eye(2)), np.eye(2))
        np.testing.assert_allclose(gram(np.zeros((2, 3))), np.zeros((2, 2)))

    def test_tall_rejected(self):
        with pytest.raises(ValueError):
            gram(np.ones((3, 2)))

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            as_matrix([[1.0, np.nan]])


class TestInverse:
    def test_hand(self):
        np.testing.assert_allclose(hermitian_inverse([[2, 1], [1, 2]]),
                                   np.array([[2, -1], [-1, 2]]) / 3, atol=1e-15)

    def test_identity(self):
        np.testing.assert_allclose(hermitian_inverse(np.eye(5)), np.eye(5))

    def test_singular_reports_pivot(self):
        with pytest.raises(SingularGram) as exc:
            hermitian_inverse([[1, 1], [1, 1]])
        assert exc.value.pivot == 1

    def test_singular_is_linalg_error(self):
        with pytest.raises(np.linalg.LinAlgError):
            hermitian_inverse(np.zeros((2, 2)))

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            hermitian_inverse([[2, 1], [0, 2]])

    def test_round_trip(self, rng):
        for _ in range(200):
            n = rng.integers(1, 9)
            H = crandn(rng, n, n + rng.integers(0, 6))
            G = gram(H)
            err = np.linalg.norm(G @ hermitian_inverse(G) - np.eye(n))
            assert err <= 1e-10 * np.sqrt(n)


class TestTraceInverse:
    @pytest.mark.parametrize("G, expected", [
        ([[2, 1], [1, 2]], 4 / 3),
        (np.eye(4), 4.0),
        (np.diag([2.0, 4.0]), 0.75),
    ])
    def test_examples(self, G, expected):
        assert trace_inverse(G) == pytest.approx(expected, rel=1e-14)

    def test_matches_eigenvalues(self, rng):
        for _ in range(100):
            n = rng.integers(1, 8)
            G = gram(crandn(rng, n, n + 3))
            lam = np.linalg.eigvalsh(G)
            assert trace_inverse(G) == pytest.approx(np.sum(1 / lam), rel=1e-8)

    def test_pinv_norm(self, hand):
        assert pinv_fro_norm_sq(hand) == pytest.approx(4 / 3)
        assert pinv_fro_norm_sq(np.eye(3)) == pytest.approx(3.0)
        assert pinv_fro_norm_sq([[1, 1]]) == pytest.approx(0.5)
        with pytest.raises(SingularGram):
            pinv_fro_norm_sq([[1, 1, 0], [2, 2, 0]])


class TestDowndate:
    def test_hand(self):
        out = sherman_morrison_downdate(np.array([[2, -1], [-1, 2]]) / 3, [1, 1])
        assert out.feasible
        assert out.denominator == pytest.approx(1 / 3)
        np.testing.assert_allclose(out.updated_inverse, np.eye(2), atol=1e-14)

    def test_zero_vector(self):
        out = sherman_morrison_downdate(np.eye(2), [0, 0])
        assert out.feasible and out.denominator == 1.0
        np.testing.assert_allclose(out.updated_inverse, np.eye(2))

    def test_rank_loss(self):
        out = sherman_morrison_downdate(np.eye(2), [1, 0])
        assert not out.feasible
        assert out.denominator == pytest.approx(0.0)
        assert out.updated_inverse is None

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            sherman_morrison_downdate(np.eye(2), [1, 0, 0])

    def test_matches_direct_inverse(self, rng):
        checked = 0
        for _ in range(1000):
            n = rng.integers(1, 9)
            A = crandn(rng, n, n + rng.integers(1, 5))
            G = A @ A.conj().T
            h = A[:, rng.integers(A.shape[1])]
            out = sherman_morrison_downdate(np.linalg.inv(G), h)
            q = np.real(np.vdot(h, np.linalg.solve(G, h)))
            assert -1e-12 <= q <= 1 + 1e-10
            if out.feasible:
                direct = np.linalg.inv(G - np.outer(h, h.conj()))
                assert np.linalg.norm(out.updated_inverse - direct) <= \
                    1e-9 * np.linalg.norm(direct)
                checked += 1
        assert checked > 900


class TestEig:
    def test_examples(self):
        lam, V = hermitian_eig(np.eye(2))
        np.testing.assert_allclose(lam, [1, 1])
        lam, V = hermitian_eig([[2, 1], [1, 2]])
        np.testing.assert_allclose(lam, [3, 1])
        assert abs(np.vdot(V[:, 0], [1, 1])) / np.sqrt(2) == pytest.approx(1.0)
        assert abs(np.vdot(V[:, 1], [1, -1])) / np.sqrt(2) == pytest.approx(1.0)
        lam, V = hermitian_eig(np.diag([1.0, 5.0, 2.0]))
        np.testing.assert_allclose(lam, [5, 2, 1])
        np.testing.assert_allclose(np.abs(V), np.eye(3)[:, [1, 2, 0]])

    def test_failure_type(self, monkeypatch):
        def boom(_):
            raise np.linalg.LinAlgError("no")
        monkeypatch.setattr(np.linalg, "eigh", boom)
        with pytest.raises(NumericalFailure):
            hermitian_eig(np.eye(2))

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 8), st.integers(0, 2**32 - 1))
    def test_eigenpairs(self, n, seed):
        rng = np.random.default_rng(seed)
        A = crandn(rng, n, n)
        G = A + A.conj().T
        lam, V = hermitian_eig(G)
        assert np.all(np.diff(lam) <= 0)
        scale = max(1.0, np.abs(lam).max())
        assert np.linalg.norm(G @ V - V * lam) <= 1e-8 * scale
        assert np.linalg.norm(V.conj().T @ V - np.eye(n)) <= 1e-10
