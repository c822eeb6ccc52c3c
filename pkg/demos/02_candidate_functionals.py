"""
Candidate length functionals
============================

Every candidate is a finite sum of terms ``(a + conj a)**l (a conj a)**p``.
Only terms sharing one degree ``K = 2p + l`` survive the scaling rule, and odd
degrees vanish on the whole imaginary axis.
"""

import math

from statlength import GeneralAnsatz, SymmetricFunctional, evaluate, odd_k_vanishes, polar_evaluate
from statlength.functionals import reduce_to_homogeneous

# A mixed ansatz splits into homogeneous parts.
G = GeneralAnsatz([(0, 1, 1.0), (2, 0, 0.5), (0, 2, 1.0), (1, 1, -2.0)])
for part in reduce_to_homogeneous(G):
    print(f"K={part.K}: terms (l, p, gamma) = {part.terms()}")

# Odd degree: zero at a = i r for every real r, so such a length would vanish
# on nonzero amplitudes.
odd = SymmetricFunctional(3, {0: 2.0, 1: -1.0})
print("odd K=3 vanishes on i*R:", odd_k_vanishes(odd))

# Even degree in polar form: rho**K times a polynomial in cos(kappa).
F = SymmetricFunctional(4, {2: 1.0, 1: 0.25})
for kappa in (0.0, math.pi / 4, math.pi / 2):
    print(f"kappa={kappa:.3f}  polar={polar_evaluate(F, 1.5, kappa):.6f}"
          f"  direct={evaluate(F, 1.5 * complex(math.cos(kappa), math.sin(kappa))):.6f}")
