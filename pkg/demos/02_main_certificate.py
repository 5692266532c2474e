# %% [markdown]
# # A 3d system and its B-matrix certificate
#
# For a face matrix F, invariance of ||F x||_inf <= 1 is witnessed by a matrix
# X with F A = X F whose diagonal is non-positive and dominates each row. We
# recover such an X for a hand-written F, then let the library build its own
# invariant.

# %%
import numpy as np

from polyinv import analyze, find_certificate, format_report, is_bmatrix

s3 = np.sqrt(3)
A = np.array([[-0.5, s3 / 2, 0.0], [-s3 / 2, -0.5, 0.0], [0.0, 0.0, -2.0]])
F = np.array([[-s3 / 6, -0.5, -s3 / 3],
              [s3 / 6, -0.5, s3 / 3],
              [s3 / 3, 0.0, -s3 / 3]])

# %%
cert = find_certificate(A, F)
print("X =\n", np.round(cert.X, 9))
print("B-matrix:", is_bmatrix(cert.X), " residual:", cert.residual)

# %% The same system analyzed end to end
print(format_report(analyze(A)))
