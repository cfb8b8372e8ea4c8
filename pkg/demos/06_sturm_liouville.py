"""
Regular Sturm-Liouville problems
================================

-u'' = lambda u on [0, pi] with u(0) = u(pi) = 0 has eigenvalues n^2.
"""

import time

import numpy as np

from minmod import SLProblem, const, poly, sl_eigenvalues

prob = SLProblem(p=const(1), q=const(0), w=const(1), a=0.0, b=np.pi,
                 robin_left=(1, 0), robin_right=(1, 0), grid_n=2000)
t0 = time.perf_counter()
rep = sl_eigenvalues(prob, 10)
print(f"{time.perf_counter() - t0:.2f} s")
for n, lam in enumerate(rep.eigenvalues, 1):
    print(n, n * n, lam)
print("certified:", rep.am_certified, "|", rep.proxy)

# Neumann ends put 0 in the point spectrum, so no certificate is issued
neumann = SLProblem(const(1), const(0), const(1), 0.0, np.pi, (0, 1), (0, 1), 2000)
print(sl_eigenvalues(neumann, 4).as_dict()["zero_in_point_spectrum"])

# variable coefficients: p = 1 + x/2, q = x^2, Robin right end
var = SLProblem(poly([1, 0.5]), poly([0, 0, 1]), const(1), 0.0, 2.0, (1, 0), (2, 1), 1000)
print(sl_eigenvalues(var, 5).eigenvalues)
