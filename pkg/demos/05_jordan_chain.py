# %% [markdown]
# # Defective eigenvalues
#
# A Jordan chain couples coordinates, so each level of the chain gets its own
# scaled faces. For the (-2, 1) block the faces are |x3| <= 1, 2|x2| <= 1 and
# 4|x1| <= 1. A nilpotent block only conserves its last coordinate, which
# gives an unbounded invariant strip.

# %%
import numpy as np

from polyinv import check_halfspace_invariant, classify, necessary_min_s, real_jordan, synthesize

J = np.array([[-2.0, 1.0, 0.0], [0.0, -2.0, 1.0], [0.0, 0.0, -2.0]])
inv = synthesize(J)
print("F =\n", inv.F)
print("residual of real Jordan form:", real_jordan(J).residual(J))

# %%
N = np.array([[0.0, 1.0], [0.0, 0.0]])
inv = synthesize(N)
print("nilpotent F =", inv.F, " bounded:", inv.bounded)
print("necessary:", necessary_min_s(classify(N)))
print("half-space invariant:", check_halfspace_invariant(N, inv.F).invariant)
