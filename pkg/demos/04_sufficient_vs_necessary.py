# %% [markdown]
# # Gap between the two bounds
#
# Cyclic 6d and 8d systems: the necessary bound comes from the worst single
# spiral, while the sufficient construction pays for every pair separately.
# The unit box itself happens to be invariant in 6d, with 6 face pairs.

# %%
import numpy as np

from polyinv import check_invariant, classify, eigenvalues, necessary_min_s, sufficient_s, synthesize


def cyclic(n):
    A = -np.eye(n) - np.eye(n, k=1)
    A[0, 1] = 1.0
    A[n - 1, 0] = -1.0
    return A


for n in (6, 8):
    A = cyclic(n)
    spec = classify(A)
    print(f"n = {n}")
    for lam, m in eigenvalues(A):
        print(f"   {lam.real:+.3f} {lam.imag:+.3f}i")
    print("   necessary:", necessary_min_s(spec), " sufficient s:", sufficient_s(spec))
    print("   synthesized s:", synthesize(A).s, " unit box invariant:",
          check_invariant(A, np.eye(n)).invariant)
