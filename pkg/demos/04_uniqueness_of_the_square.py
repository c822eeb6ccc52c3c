"""
Only p = 1 admits nontrivial instrument changes
===============================================

For ``sum |a_k|**(2p)`` to be the same in two instruments related by a mixing
linear map, the cross term of ``(x xbar)**(p-1) (y ybar)`` must vanish.  It is
``p**2 (|a|**(2p-2) |b|**2 + |c|**(2p-2) |d|**2)``, zero only for
non-mixing maps.  A search over mixing maps confirms this numerically.
"""

from statlength import (
    SearchConfig,
    brute_force_cross_term,
    cross_term_coefficient,
    exponent_sweep,
    unitarity_witness,
)
from statlength.basis import unitarity_defect

hadamard = [[1, 1], [1, -1]]
for p in (2, 3, 4):
    print(f"p={p}: closed form {cross_term_coefficient(p, hadamard)}, expansion {brute_force_cross_term(p, hadamard)}")
print("diagonal map, p=2:", cross_term_coefficient(2, [[2, 0], [0, 3]]))

results = exponent_sweep([1, 2, 3], 2, SearchConfig(restarts=20))
for r in results:
    print(f"p={r.p}: best residual {r.best_residual:.3e}  {r.verdict.value}")

best = results[0].best_matrix
print("p=1 optimum:\n", best.matrix.round(6))
print("unitarity defect:", unitarity_defect(best), " witness:", unitarity_witness(best))
