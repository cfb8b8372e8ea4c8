"""
Moore-Penrose inverse of a rank-deficient matrix
================================================
"""

import numpy as np

from minmod import least_squares_min_norm, penrose_residuals, pinv_identity_residuals, pseudoinverse

rng = np.random.default_rng(1)
# rank 2, shape 5 x 4
T = (rng.standard_normal((5, 2)) + 1j * rng.standard_normal((5, 2))) @ rng.standard_normal((2, 4))
Tp = pseudoinverse(T)

for name, r in penrose_residuals(T).items():
    print(f"{name:>10}  {r:.2e}")
for name, r in pinv_identity_residuals(T).items():
    print(f"{name:>16}  {r:.2e}")

# T^+ y is the least-squares solution of smallest norm
y = rng.standard_normal(5)
x = least_squares_min_norm(T, y)
x_other = x + np.linalg.svd(T)[2][-1].conj()  # add a kernel direction
print("residuals equal:", np.isclose(np.linalg.norm(T @ x - y), np.linalg.norm(T @ x_other - y)))
print("norms:", np.linalg.norm(x), "<", np.linalg.norm(x_other))
