"""
Click ensembles and convergence
===============================

Finite ensembles are drawn with the squared-modulus frequencies, so this
illustrates how estimates converge (error ~ n**-0.5) rather than testing the
rule itself.  Two instruments related by a unitary change see the same total
squared length.
"""

import numpy as np

from statlength import Representation, convergence_curve, estimate_frequencies, simulate_clicks, two_instrument_run
from statlength.clicks import loglog_slope

rep = Representation.from_amplitudes([1, 1])
curve = convergence_curve(rep, [10**k for k in range(2, 7)], trials=50, seed=0)
for n, err in curve:
    print(f"n={n:>8}  mean max error {err:.2e}")
print("log-log slope:", round(loglog_slope(curve), 3))

ensemble = simulate_clicks(Representation.from_amplitudes([1, 2j]), 10**6, seed=1)
print(ensemble.to_csv(), estimate_frequencies(ensemble))

hadamard = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
run = two_instrument_run(Representation.from_amplitudes([1, 0]), hadamard, 10**5, seed=2)
print("A:", estimate_frequencies(run.ensemble_a), " B:", estimate_frequencies(run.ensemble_b),
      " length gap:", run.length_gap)
