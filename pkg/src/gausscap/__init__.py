"""Gaussian benchmark capacities of bosonic channels and adaptive receivers.

The package has two halves.  The first computes energy-constrained
communication rates achievable with Gaussian encodings over phase-insensitive
Gaussian channels: coherent-state capacity, squeezed-state capacity, the
Holevo limit, multimode water-filling, and a majorization-based check that
correlated preparation noise cannot beat independent use of the best mode
basis.  The second simulates a non-Gaussian adaptive photon-counting receiver
over QAM constellations and compares it against those Gaussian benchmarks,
alongside QAM with ideal heterodyne detection.
"""

from __future__ import annotations

from .becerra import (
    BecerraCurvePoint,
    ConfusionMatrix,
    DetectionRecord,
    ReceiverConfig,
    SymbolAlphabet,
    bayesian_update,
    becerra_capacity_curve,
    discrete_mutual_information,
    enumerate_detection_records,
    exact_joint,
    exact_record_mutual_information,
    monte_carlo_confusion,
    mutual_information_bias_jackknife,
    mutual_information_stderr,
    run_trial,
    stage_no_click_prob,
)
from .capacity import (
    CapacityReport,
    EfficiencyGrid,
    capacity_report,
    channel_family,
    coherent_capacity,
    crossover_energy,
    efficiency_grid,
    gaussian_capacity,
    gordon_g,
    holevo_capacity,
    squeezed_capacity,
    threshold_energy,
)
from .channel import PhaseInsensitiveChannel
from .constellation import (
    QamConstellation,
    build_qam,
    mean_photon_number,
    optimize_sigma,
    propagate,
    solve_delta_for_energy,
)
from .gaussian_core import (
    CovMatrix,
    PassiveSymplectic,
    SqueezingSpectrum,
    apply_passive,
    input_photon_number,
    mean_vector,
    random_passive_symplectic,
    squeezed_diag_cm,
    symplectic_eigenvalues,
    symplectic_form,
    thermal_cm,
    vacuum_cm,
)
from .heterodyne import (
    BoundViolationError,
    HeterodyneModel,
    HeterodynePoint,
    QuadratureError,
    heterodyne_curve,
    heterodyne_mi,
)
from .majorization import (
    SpectrumVector,
    case_inequality_check,
    eigenvalue_sum_majorization_holds,
    majorizes,
    random_majorized_pairs,
    schur_convexity_check,
    weakly_majorizes,
)
from .multimode import (
    AdditivitySummary,
    MultimodeScenario,
    WaterfillAllocation,
    additivity_gap,
    mutual_information_gaussian,
    random_scenario,
    run_additivity_experiment,
    scenario_capacity,
    waterfill,
)

__version__ = "0.1.0"

__all__ = [
    "AdditivitySummary",
    "BecerraCurvePoint",
    "BoundViolationError",
    "CapacityReport",
    "ConfusionMatrix",
    "CovMatrix",
    "DetectionRecord",
    "EfficiencyGrid",
    "HeterodyneModel",
    "HeterodynePoint",
    "MultimodeScenario",
    "PassiveSymplectic",
    "PhaseInsensitiveChannel",
    "QamConstellation",
    "QuadratureError",
    "ReceiverConfig",
    "SpectrumVector",
    "SqueezingSpectrum",
    "SymbolAlphabet",
    "WaterfillAllocation",
    "additivity_gap",
    "apply_passive",
    "bayesian_update",
    "becerra_capacity_curve",
    "build_qam",
    "capacity_report",
    "case_inequality_check",
    "channel_family",
    "coherent_capacity",
    "crossover_energy",
    "discrete_mutual_information",
    "efficiency_grid",
    "eigenvalue_sum_majorization_holds",
    "enumerate_detection_records",
    "exact_joint",
    "exact_record_mutual_information",
    "gaussian_capacity",
    "gordon_g",
    "heterodyne_curve",
    "heterodyne_mi",
    "holevo_capacity",
    "input_photon_number",
    "majorizes",
    "mean_photon_number",
    "mean_vector",
    "monte_carlo_confusion",
    "mutual_information_bias_jackknife",
    "mutual_information_gaussian",
    "mutual_information_stderr",
    "optimize_sigma",
    "propagate",
    "random_majorized_pairs",
    "random_passive_symplectic",
    "random_scenario",
    "run_additivity_experiment",
    "run_trial",
    "scenario_capacity",
    "schur_convexity_check",
    "solve_delta_for_energy",
    "squeezed_capacity",
    "squeezed_diag_cm",
    "stage_no_click_prob",
    "symplectic_eigenvalues",
    "symplectic_form",
    "thermal_cm",
    "threshold_energy",
    "vacuum_cm",
    "waterfill",
    "weakly_majorizes",
    "__version__",
]
