import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import HEXAGON, MAIN_A, MAIN_APRIME, MAIN_F, NILPOTENT, SPIRAL
from oracles import simulate_face
from polyinv.errors import DimensionMismatch, NonSquare, ZeroRow
from polyinv.synthesis import PolyhedralInvariant
from polyinv.verify import (check_halfspace_invariant, check_invariant, find_certificate,
                            is_bmatrix, is_bounded, verify_threshold)

SQ3 = math.sqrt(3)


class TestCheckInvariant:
    def test_hexagon_is_invariant_and_tight(self):
        rep = check_invariant(SPIRAL, HEXAGON)
        assert rep.invariant
        assert abs(rep.faces[2].worst_derivative) <= 1e-9

    def test_square_is_not(self):
        rep = check_invariant(SPIRAL, np.eye(2))
        assert not rep.invariant
        for f in rep.failing():
            x = f.witness
            assert np.max(np.abs(x)) <= 1 + 1e-9
            assert x[f.index] == pytest.approx(1.0, abs=1e-9)
            assert (SPIRAL @ x)[f.index] > rep.threshold

    def test_contracting_box(self):
        rep = check_invariant(np.diag([-1.0, -1.0]), np.eye(2))
        assert rep.invariant
        assert [f.worst_derivative for f in rep.faces] == pytest.approx([-1.0, -1.0])

    def test_redundant_face_passes(self):
        F = np.vstack([np.eye(2), [[0.1, 0.1]]])
        rep = check_invariant(np.diag([-1.0, -1.0]), F)
        assert rep.faces[2].status == "infeasible"
        assert rep.invariant

    def test_unbounded_face_gives_witness(self):
        # strip |x2| <= 1 under a shear that pushes x2 by x1
        A = np.array([[0.0, 0.0], [1.0, 0.0]])
        rep = check_invariant(A, [[0.0, 1.0]])
        (f,) = rep.faces
        assert f.status == "unbounded" and not rep.invariant
        assert (np.array([0.0, 1.0]) @ A @ f.witness) > 0
        assert f.witness[1] == pytest.approx(1.0)

    def test_dimension_errors(self):
        with pytest.raises(DimensionMismatch):
            check_invariant(np.eye(2), np.eye(3))
        with pytest.raises(ZeroRow):
            check_invariant(np.eye(2), [[0.0, 0.0]])

    def test_threshold_scales(self):
        assert verify_threshold(np.eye(2), np.eye(2)) == pytest.approx(2e-9)


class TestHalfspace:
    def test_scalar_contraction(self):
        assert check_halfspace_invariant([[-1.0]], [[1.0]]).invariant

    def test_conserved_coordinate(self):
        assert check_halfspace_invariant(NILPOTENT, [[0.0, 1.0]]).invariant

    def test_hexagon_one_sided_is_not_invariant(self):
        # The one-sided region is an unbounded wedge; on face 2 the derivative
        # -4 y grows without bound as y -> -inf.
        rep = check_halfspace_invariant(SPIRAL, HEXAGON)
        assert not rep.invariant
        bad = rep.failing()[0]
        assert bad.index == 1 and bad.status == "unbounded"
        x0 = bad.witness
        row = HEXAGON[1]
        assert row @ x0 == pytest.approx(1.0)
        assert simulate_face(SPIRAL, x0, row, 1e-3) > 1.0

    def test_doubled_rows_match_two_sided(self):
        F2 = np.vstack([HEXAGON, -HEXAGON])
        assert check_halfspace_invariant(SPIRAL, F2).invariant
        assert check_invariant(SPIRAL, HEXAGON).invariant


class TestBMatrix:
    def test_examples(self):
        assert is_bmatrix(MAIN_APRIME)
        assert not is_bmatrix(np.eye(3))
        assert is_bmatrix(np.zeros((3, 3)))

    def test_not_dominant(self):
        assert not is_bmatrix([[-1.0, 2.0], [0.0, -1.0]])

    def test_non_square(self):
        with pytest.raises(NonSquare):
            is_bmatrix(np.ones((2, 3)))


class TestCertificate:
    def test_main_example_recovers_aprime(self):
        cert = find_certificate(MAIN_A, MAIN_F)
        assert cert is not None
        assert np.max(np.abs(cert.X - MAIN_APRIME)) <= 1e-7
        assert is_bmatrix(cert.X)

    def test_identity_returns_a(self):
        cert = find_certificate(MAIN_APRIME, np.eye(3))
        assert np.allclose(cert.X, MAIN_APRIME, atol=1e-10)

    def test_hexagon_feasible(self):
        cert = find_certificate(SPIRAL, HEXAGON)
        assert cert is not None
        assert is_bmatrix(cert.X)
        assert np.max(np.abs(HEXAGON @ SPIRAL - cert.X @ HEXAGON)) <= 1e-8
        assert check_invariant(SPIRAL, HEXAGON).invariant

    def test_square_infeasible(self):
        assert find_certificate(SPIRAL, np.eye(2)) is None


class TestBounded:
    def test_cases(self):
        assert is_bounded(PolyhedralInvariant(np.eye(2), True))
        assert not is_bounded(PolyhedralInvariant(np.array([[0.0, 1.0]]), False))
        assert is_bounded(PolyhedralInvariant(HEXAGON, True))


@settings(max_examples=50, deadline=None)
@given(st.floats(0.05, 20.0))
def test_scale_invariance_of_verdict(alpha):
    for F in (HEXAGON, np.eye(2)):
        assert (check_invariant(SPIRAL, alpha * F).verdict
                == check_invariant(SPIRAL, F).verdict)
