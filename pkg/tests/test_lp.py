import numpy as np
import pytest
from scipy.optimize import linprog

from oracles import lp_vertex_max
from polyinv.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, LinearProgram, lp_solve


def solve(c, cons, **kw):
    return lp_solve(LinearProgram.from_constraints(c, cons, **kw))


def test_single_bound():
    res = solve([1.0], [([1.0], "<=", 1.0)])
    assert res.status == OPTIMAL and res.value == pytest.approx(1.0)


def test_conflicting_equality():
    assert solve([1.0], [([1.0], "<=", 1.0), ([1.0], "=", 2.0)]).status == INFEASIBLE


def test_box_corner():
    box = [([1, 0], "<=", 1), ([0, 1], "<=", 1), ([-1, 0], "<=", 1), ([0, -1], "<=", 1)]
    res = solve([1.0, 1.0], box)
    assert res.status == OPTIMAL
    assert res.value == pytest.approx(2.0)
    assert np.allclose(res.x, [1.0, 1.0])


def test_unbounded_reports_ray():
    res = solve([1.0, 0.0], [([0.0, 1.0], "<=", 1.0)])
    assert res.status == UNBOUNDED
    assert res.ray @ [1.0, 0.0] > 0


def test_nonneg_flag():
    res = solve([-1.0], [([1.0], "<=", 5.0)], nonneg=True)
    assert res.value == pytest.approx(0.0)


def test_greater_equal_relation():
    res = solve([-1.0, -1.0], [([1, 1], ">=", 2), ([1, 0], "<=", 5), ([0, 1], "<=", 5)])
    assert res.value == pytest.approx(-2.0)


def test_degenerate_cycling_example():
    # Beale's classic cycling LP; Bland's rule must terminate
    c = [0.75, -150.0, 0.02, -6.0]
    cons = [([0.25, -60, -0.04, 9], "<=", 0), ([0.5, -90, -0.02, 3], "<=", 0),
            ([0, 0, 1, 0], "<=", 1)]
    res = solve(c, cons, nonneg=True)
    assert res.status == OPTIMAL
    assert res.value == pytest.approx(0.05)


def test_bounded_polytopes_against_vertex_enumeration(rng):
    checked = 0
    for _ in range(150):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(n + 1, 7))
        A = rng.standard_normal((m, n))
        b = rng.uniform(0.1, 2.0, m)
        # add a box so the feasible set is a polytope containing the origin
        A = np.vstack([A, np.eye(n), -np.eye(n)])
        b = np.concatenate([b, 3 * np.ones(2 * n)])
        c = rng.standard_normal(n)
        ref = lp_vertex_max(c, A, b)
        res = lp_solve(LinearProgram(c, A, b, np.zeros((0, n)), np.zeros(0)))
        assert res.status == OPTIMAL
        assert res.value == pytest.approx(ref[0], abs=1e-8)
        assert np.all(A @ res.x <= b + 1e-9)
        checked += 1
    assert checked == 150


def test_general_lps_against_highs(rng):
    seen = set()
    for _ in range(300):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 9))
        me = int(rng.integers(0, 3))
        c = rng.standard_normal(n)
        A, b = rng.standard_normal((m, n)), rng.standard_normal(m)
        Ae, be = rng.standard_normal((me, n)), rng.standard_normal(me)
        res = lp_solve(LinearProgram(c, A, b, Ae, be))
        ref = linprog(-c, A_ub=A, b_ub=b, A_eq=Ae if me else None, b_eq=be if me else None,
                      bounds=[(None, None)] * n, method="highs")
        status = {0: OPTIMAL, 2: INFEASIBLE, 3: UNBOUNDED}[ref.status]
        seen.add(status)
        assert res.status == status
        if status == OPTIMAL:
            assert res.value == pytest.approx(-ref.fun, abs=1e-7 * (1 + abs(ref.fun)))
    assert seen == {OPTIMAL, INFEASIBLE, UNBOUNDED}


def test_ragged_constraint_rejected():
    with pytest.raises(ValueError):
        LinearProgram.from_constraints([1.0, 2.0], [([1.0], "<=", 1.0)])
