"""
Minimum attainment, restrictions and block decompositions
=========================================================
"""

import numpy as np

from minmod import is_min_attaining, reduced_decomposition_check, restriction_duality_check, witness_spectral_check

# in finite dimension the minimum is always attained; the witness is a
# unit vector x with |T| x = m(T) x
T = np.array([[3.0, 1.0], [0.0, 2.0]])
cert = is_min_attaining(T)
print("m =", cert.m_value, "witness residual", witness_spectral_check(T, cert))

# restricting diag(2, 3) to span{(1, 1)} gives sqrt(6.5), which matches
# 1 / ||T^-1 restricted to T(M)||
left, right = restriction_duality_check(np.diag([2.0, 3.0]), [[1.0, 1.0]])
print(left, right, np.sqrt(6.5))

# block diagonal: m(T) is the smaller of the block moduli
B = np.zeros((4, 4))
B[:2, :2] = [[1.0, 2.0], [0.0, 3.0]]
B[2:, 2:] = [[0.5, 0.0], [0.0, 4.0]]
rep = reduced_decomposition_check(B, [True, True, False, False])
print(rep.m_T, rep.m_blocks, rep.min_law_holds)
