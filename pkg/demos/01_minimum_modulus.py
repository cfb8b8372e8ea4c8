"""
Minimum modulus and reduced minimum modulus
===========================================

m(T) is the smallest ||Tx|| over unit vectors. gamma(T) does the same but
only over vectors orthogonal to the kernel.
"""

import numpy as np

from minmod import moduli, pseudoinverse
from minmod.linalg import norm2
from minmod.moduli import distance_to_spectrum_check, gram_modulus_check

# a diagonal matrix with a kernel: m = 0, gamma = 2
T = np.diag([0.0, 2.0, 3.0])
print(moduli(T).as_dict())

# gamma(T) * ||T^+|| = 1 whenever T != 0
rng = np.random.default_rng(0)
A = rng.standard_normal((6, 3)) @ rng.standard_normal((3, 5))
rep = moduli(A)
print("rank", rep.rank, "gamma * ||A+|| =", rep.gamma * norm2(pseudoinverse(A)))

# m(T) from singular values vs the distance from 0 to the spectrum of |T|
B = rng.standard_normal((5, 4)) + 1j * rng.standard_normal((5, 4))
print("m(B), dist(0, sigma(|B|)):", distance_to_spectrum_check(B))
print("m(B*B), m(B)^2:          ", gram_modulus_check(B))
