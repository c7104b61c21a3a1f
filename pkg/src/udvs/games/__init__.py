"""Security experiments, source-hiding checks and problem instances."""

from .adversaries import EFCMA_ADVERSARIES, PSI_DISTINGUISHERS
from .experiments import PSIResult, Transcript, run_efcma, run_psi, run_psi_once
from .problems import KINDS, ProblemInstance, canonical_solution, check_dh_tuple, check_solution, gen_instance, random_candidate
from .source_hiding import SourceHidingReport, check_source_hiding

__all__ = [
    "EFCMA_ADVERSARIES", "PSI_DISTINGUISHERS", "PSIResult", "Transcript", "run_efcma", "run_psi",
    "run_psi_once", "KINDS", "ProblemInstance", "canonical_solution", "check_dh_tuple",
    "check_solution", "gen_instance", "random_candidate", "SourceHidingReport", "check_source_hiding",
]
