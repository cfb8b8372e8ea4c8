"""
Polar decomposition and the bounded transform
=============================================

T = V|T| with V a partial isometry, and F = T (I + T*T)^(-1/2), a strict
contraction from which T can be recovered.
"""

import numpy as np

from minmod import bounded_transform, inverse_transform, polar, transform_moduli_check
from minmod.factorizations import polar_diagnostics, transform_diagnostics

T = np.array([[0.0, 2.0, 0.0], [0.0, 0.0, 1.0], [0.0, 0.0, 0.0]])
r = polar(T)
print("|T| =\n", r.modulus.real)
print(polar_diagnostics(T, r))

# diag(1): m(F) = 1/sqrt(2)
print(transform_moduli_check(np.eye(1)))

rng = np.random.default_rng(2)
A = 5 * (rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
t = bounded_transform(A)
print(transform_diagnostics(A, t))
print("round trip error:", np.linalg.norm(inverse_transform(t.F) - A))
