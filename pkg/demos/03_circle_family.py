# %% [markdown]
# # Slower spirals need fewer faces
#
# For eigenvalues -1 +/- a i the spiral tightens as a grows, and the polygon
# needs more sides: k half-faces with k the smallest integer above
# 90 / atan(1/a) in degrees (equality allowed for a simple pair).

# %%
import numpy as np

from polyinv import check_invariant, classify, spiral_ratio, synthesize, trajectory_contained

for a in (0.5, 1.0, np.sqrt(3), 2.0, 4.0, 10.0):
    A = np.array([[-1.0, -a], [a, -1.0]])
    c = classify(A).classes[0]
    inv = synthesize(A)
    ok = check_invariant(A, inv.F).invariant and trajectory_contained(A, inv.F) is None
    print(f"a = {a:6.3f}  ratio = {spiral_ratio(-1.0, a):7.3f}  {c.kind:16s} "
          f"k = {c.k}  faces = {2 * inv.s}  verified = {ok}")
