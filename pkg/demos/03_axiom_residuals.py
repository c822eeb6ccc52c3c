"""
Checking the axioms numerically
===============================

Each rule becomes a residual over seeded samples.  The squared modulus passes
all of them; a functional with a ``(a + conj a)**2`` term fails scaling by a
phase, and ``|a|**4`` fails device independence.
"""

import numpy as np

from statlength import (
    AxiomConfig,
    SymmetricFunctional,
    additivity_contract_check,
    cauchy_linearity_check,
    device_independence_residual,
    involution_residual,
    phase_witness,
    random_unitary,
    scaling_residual,
)

cfg = AxiomConfig(rng_seed=1)
born = SymmetricFunctional.born()
mixed = SymmetricFunctional(2, {1: 1.0, 0: 1.0})
quartic = SymmetricFunctional.pure(2)
u = random_unitary(3, seed=4)

for name, F in [("|a|^2", born), ("|a|^2 + (a+abar)^2", mixed), ("|a|^4", quartic)]:
    print(f"--- {name}")
    for report in (
        scaling_residual(F, 2.0, cfg),
        phase_witness(F, cfg),
        involution_residual(F, cfg),
        additivity_contract_check(F, cfg),
        device_independence_residual(F, u, cfg),
    ):
        print(f"{report.axiom:<20} {report.verdict}  residual={report.max_residual:.3e}")

# Distributivity plus additivity leave a Cauchy equation for the induced map on
# lengths; its continuous solutions are the linear ones.
print(cauchy_linearity_check(lambda x: 2.5 * x))
print(cauchy_linearity_check(lambda x: x * x))
print("implied const for c=2:", scaling_residual(born, 2.0, cfg).details["implied_const"])
print("scaling c = exp(0.3i) for |a|^2:", scaling_residual(born, np.exp(0.3j), cfg).max_residual)
