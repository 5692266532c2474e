import math

import numpy as np
import pytest

SQ3 = math.sqrt(3.0)

ACCEPTANCE_LOG = []


def cyclic_matrix(n):
    """The n-dimensional circulant-style example: -1 on the diagonal and
    superdiagonal, +1 at (1, 2), -1 at (n, 1)."""
    A = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i == 0 and j == 1:
                A[i, j] = 1.0
            elif i == j or j == i + 1 or (i == n - 1 and j == 0):
                A[i, j] = -1.0
    return A


def spiral(a):
    return np.array([[-1.0, -a], [a, -1.0]])


SPIRAL = spiral(SQ3)
HEXAGON = np.array([[0.0, 2.0], [SQ3, 1.0], [-SQ3, 1.0]])
MAIN_A = np.array([[-0.5, SQ3 / 2, 0.0], [-SQ3 / 2, -0.5, 0.0], [0.0, 0.0, -2.0]])
MAIN_F = np.array([
    [-SQ3 / 6, -0.5, -SQ3 / 3],
    [SQ3 / 6, -0.5, SQ3 / 3],
    [SQ3 / 3, 0.0, -SQ3 / 3],
])
MAIN_APRIME = np.array([[-1.0, 1.0, 0.0], [0.0, -1.0, 1.0], [-1.0, 0.0, -1.0]])
NILPOTENT = np.array([[0.0, 1.0], [0.0, 0.0]])
JORDAN3 = np.array([[-2.0, 1.0, 0.0], [0.0, -2.0, 1.0], [0.0, 0.0, -2.0]])

FIXTURES = {
    "spiral": SPIRAL,
    "main": MAIN_A,
    "nilpotent": NILPOTENT,
    "jordan3": JORDAN3,
    "cyclic6": cyclic_matrix(6),
    "cyclic8": cyclic_matrix(8),
    "circle1": spiral(1.0),
    "circle2": spiral(2.0),
    "diag": np.diag([-1.0, -2.0]),
    "aprime": MAIN_APRIME,
}


def random_stable(seed, n_max=6, min_ratio=0.2):
    """Well-conditioned Hurwitz matrix P D P^-1 with n <= n_max.

    Complex pairs keep |a|/|b| >= min_ratio so polygons stay small.
    """
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, n_max + 1))
    D = np.zeros((n, n))
    i = 0
    while i < n:
        if n - i >= 2 and rng.random() < 0.5:
            b = rng.uniform(0.2, 3.0)
            a = -rng.uniform(max(0.2, min_ratio * b), 3.0 + min_ratio * b)
            D[i:i + 2, i:i + 2] = [[a, b], [-b, a]]
            i += 2
        else:
            D[i, i] = -rng.uniform(0.2, 3.0)
            i += 1
    Q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    P = Q @ np.diag(rng.uniform(0.5, 2.0, n))
    return P @ D @ np.linalg.inv(P)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LOG:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LOG:
        terminalreporter.write_line(line)
