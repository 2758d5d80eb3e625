"""Committee election rules (Monroe, CC, MAV, PAV) and their solvers."""

from .objectives import (
    RULES,
    approval_score,
    harmonic,
    mav_distance,
    mav_score,
    misrepresentation,
    optimal_assignment,
    pav_score,
)
from .solvers import (
    CommitteeSolution,
    MultiWinnerInstance,
    evaluate,
    exact_mav_inner,
    pav_greedy_small_score,
    solve_by_committee_enumeration,
    solve_cc_by_voter_partition,
    solve_cc_xp_misrep,
    solve_mav_with_deletion_set,
    solve_pav_score_xp,
)
from .kernel import KernelOutcome, pav_kernelize

__all__ = [
    "RULES", "approval_score", "harmonic", "mav_distance", "mav_score", "misrepresentation",
    "optimal_assignment", "pav_score", "CommitteeSolution", "MultiWinnerInstance", "evaluate",
    "exact_mav_inner", "pav_greedy_small_score", "solve_by_committee_enumeration",
    "solve_cc_by_voter_partition", "solve_cc_xp_misrep", "solve_mav_with_deletion_set",
    "solve_pav_score_xp", "KernelOutcome", "pav_kernelize",
]
