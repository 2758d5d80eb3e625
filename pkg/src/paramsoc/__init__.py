"""Multi-winner election rules, hedonic-game stability and parameterized solvers."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ContractError, DomainError, ParamSocError, ParseError, ResourceLimitError, UnsupportedKindError,
)
from .profiles import (  # noqa: E402
    Axis, DeletionCertificate, PreferenceProfile, deletion_distance, is_single_crossing,
    is_single_peaked, rank, recognize_sc, recognize_sp,
)
from .multiwinner import (  # noqa: E402
    CommitteeSolution, KernelOutcome, MultiWinnerInstance, approval_score, mav_distance, mav_score,
    misrepresentation, optimal_assignment, pav_greedy_small_score, pav_kernelize, pav_score,
    solve_by_committee_enumeration, solve_cc_by_voter_partition, solve_cc_xp_misrep,
    solve_mav_with_deletion_set, solve_pav_score_xp,
)
from .hedonic import (  # noqa: E402
    HedonicInstance, ParameterReport, Partition, Witness, compare, ea_nash_exist_fas,
    fa_core_verify_bounded, fa_core_verify_colorcoded, fa_scc_partition, fa_unbounded_blocking,
    measure_parameters, nash_search_symmetric, verify,
)
