"""Executable checks that squared moduli are the only admissible statistical length."""

__version__ = "0.1.0"

from .amplitude import Amplitude, Representation, born_frequencies, from_polar, star, tilde, to_polar
from .axioms import (
    AxiomConfig,
    ResidualReport,
    additivity_contract_check,
    cauchy_linearity_check,
    device_independence_residual,
    involution_residual,
    phase_witness,
    scaling_residual,
)
from .basis import BasisChange, Triviality, classify_triviality, random_unitary
from .clicks import (
    ClickEnsemble,
    SimulationConfig,
    convergence_curve,
    estimate_frequencies,
    frequencies_from_lengths,
    simulate_clicks,
    two_instrument_run,
)
from .functionals import (
    GeneralAnsatz,
    SymmetricFunctional,
    evaluate,
    evaluate_rep,
    odd_k_vanishes,
    polar_evaluate,
    reduce_to_homogeneous,
)
from .uniqueness import (
    SearchConfig,
    SweepResult,
    brute_force_cross_term,
    cross_term_coefficient,
    exponent_sweep,
    preservation_residual,
    preserver_search,
    unitarity_witness,
)
