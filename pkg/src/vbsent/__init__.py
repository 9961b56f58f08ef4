"""Entanglement of the spin-1 valence-bond chain, in closed form.

The package computes reduced density matrices, partial-transpose
spectra, negativities, and mutual information for blocks of a spin-1
valence-bond chain three independent ways: analytic closed forms, a
16x16 effective two-mode operator, and exact contraction of the matrix
product state.  `vbsent.verify` pits the routes against each other;
the `vbsent` console script exposes everything as CSV/JSON tables.
"""

__version__ = "0.1.0"

from .closed_forms import (
    ChannelWeights,
    adjacent_negativity_equal,
    adjacent_pt_negativity,
    asymptotic_disjoint_spectrum,
    decay_parameter,
    disjoint_spectrum,
    mutual_information,
    pure_block_spectrum,
    pure_pt_spectrum,
)
from .effective_rho import (
    EffectiveDensityOperator,
    measures,
    mode_partial_transpose,
    rho_ab_adjacent,
    rho_ab_open,
    rho_ab_pbc,
)
from .linalg import (
    HermitianOperator,
    SpectrumReport,
    partial_trace,
    partial_transpose,
    spectrum_report,
)
from .mps_oracle import build_open_chain, build_ring, entanglement_report
from .sphere_mc import estimate_block_overlap, estimate_vbs_norm
from .verify import run_suites

__all__ = [
    "ChannelWeights",
    "EffectiveDensityOperator",
    "HermitianOperator",
    "SpectrumReport",
    "__version__",
    "adjacent_negativity_equal",
    "adjacent_pt_negativity",
    "asymptotic_disjoint_spectrum",
    "build_open_chain",
    "build_ring",
    "decay_parameter",
    "disjoint_spectrum",
    "entanglement_report",
    "estimate_block_overlap",
    "estimate_vbs_norm",
    "measures",
    "mode_partial_transpose",
    "mutual_information",
    "partial_trace",
    "partial_transpose",
    "pure_block_spectrum",
    "pure_pt_spectrum",
    "rho_ab_adjacent",
    "rho_ab_open",
    "rho_ab_pbc",
    "run_suites",
    "spectrum_report",
]
