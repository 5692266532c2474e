# %% [markdown]
# # A spiral needs a hexagon
#
# The flow dx/dt = A x with A = [-1, -sqrt(3); sqrt(3), -1] spirals into the
# origin. A square is not invariant: trajectories cut its corners. A regular
# hexagon of inradius 1 is invariant, and it is the smallest symmetric polygon
# that works.

# %%
import numpy as np

from polyinv import check_invariant, classify, necessary_min_s, synthesize, trajectory_contained

A = np.array([[-1.0, -np.sqrt(3)], [np.sqrt(3), -1.0]])
hexagon = np.array([[0.0, 2.0], [np.sqrt(3), 1.0], [-np.sqrt(3), 1.0]])

# %% The square fails, and the LP hands back a point where the flow leaves
rep = check_invariant(A, np.eye(2))
print("square:", rep.verdict)
for f in rep.failing():
    print(f"  face {f.index}: derivative {f.worst_derivative:.4f} at {f.witness}")

cex = trajectory_contained(A, np.eye(2))
print(f"  simulated escape from {cex.x0} at t = {cex.t:.2f}")

# %% The hexagon holds; its third face is tight (optimum 0)
rep = check_invariant(A, hexagon)
print("hexagon:", rep.verdict, [round(f.worst_derivative, 12) for f in rep.faces])

# %% No 4-sided set can work, and synthesis finds a 6-sided one
spec = classify(A)
print("class:", spec.classes[0].kind, "k =", spec.classes[0].k)
print("necessary:", necessary_min_s(spec))
inv = synthesize(A)
print("synthesized F:\n", np.round(inv.F, 4))
