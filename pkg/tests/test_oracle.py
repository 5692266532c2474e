import math

import numpy as np
import pytest
import scipy.linalg

from conftest import FIXTURES, HEXAGON, SPIRAL
from oracles import rotation_expm
from polyinv.oracle import TrajectoryProbe, expm, sample_boundary, trajectory_contained


class TestExpm:
    def test_zero(self):
        assert np.array_equal(expm(np.zeros((3, 3))), np.eye(3))

    def test_rotation_quarter_turn(self):
        R = np.array([[0.0, 1.0], [-1.0, 0.0]])
        assert np.max(np.abs(expm(R, math.pi / 2) - [[0, 1], [-1, 0]])) <= 1e-10
        for th in (0.3, 2.0, 7.5):
            assert np.allclose(expm(R, th), rotation_expm(th), atol=1e-10)

    def test_diagonal(self):
        assert np.allclose(expm(np.diag([-1.0, 2.0]), 0.5), np.diag(np.exp([-0.5, 1.0])))

    @pytest.mark.parametrize("name", sorted(FIXTURES))
    def test_matches_scipy(self, name):
        A = FIXTURES[name]
        for t in (0.01, 1.0, 5.0):
            ref = scipy.linalg.expm(A * t)
            assert np.max(np.abs(expm(A, t) - ref)) <= 1e-10 * max(1.0, np.max(np.abs(ref)))

    def test_semigroup(self, rng):
        for _ in range(30):
            A = rng.standard_normal((4, 4))
            s, t = rng.uniform(0, 2, 2)
            lhs = expm(A, s + t)
            assert np.max(np.abs(lhs - expm(A, s) @ expm(A, t))) <= 1e-8 * max(1, np.abs(lhs).max())


class TestSampling:
    def test_on_boundary(self):
        X = sample_boundary(HEXAGON, TrajectoryProbe(n_samples=50))
        assert X.shape == (2, 50)
        assert np.allclose(np.max(np.abs(HEXAGON @ X), axis=0), 1.0)

    def test_seeded(self):
        p = TrajectoryProbe(n_samples=10, seed=7)
        assert np.array_equal(sample_boundary(HEXAGON, p), sample_boundary(HEXAGON, p))

    def test_linearity_of_flow(self, rng):
        X = rng.standard_normal((2, 5))
        E = expm(SPIRAL, 0.7)
        assert np.allclose(E @ (2 * X), 2 * (E @ X))

    @pytest.mark.parametrize("kw", [{"horizon": 0}, {"dt": 0}, {"dt": 30}, {"n_samples": 0}])
    def test_probe_validation(self, kw):
        with pytest.raises(ValueError):
            TrajectoryProbe(**kw)


class TestTrajectory:
    def test_hexagon_holds(self):
        assert trajectory_contained(SPIRAL, HEXAGON) is None

    def test_square_escapes(self):
        cex = trajectory_contained(SPIRAL, np.eye(2))
        assert cex is not None
        assert cex.value > 1 + 1e-6 and 0 < cex.t <= 20
        x = expm(SPIRAL, cex.t) @ cex.x0
        assert np.max(np.abs(x)) == pytest.approx(cex.value, rel=1e-9)

    def test_unstable_escapes(self):
        assert trajectory_contained(np.eye(2), np.eye(2)) is not None
