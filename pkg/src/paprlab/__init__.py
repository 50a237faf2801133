"""PAPR reduction toolbox for multicarrier frames.

Implements the common selected-mapping (SLM) scheme with Walsh-Hadamard and
Golay phase banks, a permutation-search scheme (ISIS) that reorders the
frame symbols instead of rotating them, and a seeded Monte-Carlo harness
that estimates CCDF curves of the post-selection PAPR.
"""

from .signal_core import Papr, map_qpsk, papr, synthesize, synthesize_many
from .schemes import (
    SelectionResult,
    gen_golay,
    gen_walsh_hadamard,
    golay_pair,
    hadamard_matrix,
    isis_recover_direct,
    isis_recover_paper,
    isis_select_exhaustive,
    isis_select_sampled,
    perm_rank,
    perm_unrank,
    slm_recover,
    slm_select,
)
from .harness import (
    CcdfCurve,
    SimConfig,
    estimate_ccdf,
    gen_random_frame,
    papr_threshold_at,
    preset_fig5,
    preset_fig6,
    preset_fig7,
    run_experiment,
    run_papr_samples,
)

__version__ = "0.1.0"

__all__ = [
    "Papr",
    "map_qpsk",
    "papr",
    "synthesize",
    "synthesize_many",
    "SelectionResult",
    "gen_golay",
    "gen_walsh_hadamard",
    "golay_pair",
    "hadamard_matrix",
    "isis_recover_direct",
    "isis_recover_paper",
    "isis_select_exhaustive",
    "isis_select_sampled",
    "perm_rank",
    "perm_unrank",
    "slm_recover",
    "slm_select",
    "CcdfCurve",
    "SimConfig",
    "estimate_ccdf",
    "gen_random_frame",
    "papr_threshold_at",
    "preset_fig5",
    "preset_fig6",
    "preset_fig7",
    "run_experiment",
    "run_papr_samples",
    "__version__",
]
