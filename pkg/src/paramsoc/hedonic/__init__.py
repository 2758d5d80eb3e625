"""Hedonic games: models, stability verification and search."""

from .friends import (
    fa_core_verify_bounded, fa_core_verify_colorcoded, fa_scc_partition, fa_unbounded_blocking,
    trial_count,
)
from .model import (
    ADDITIVE, BLOCKING, EA, ENVY, FA, MODELS, TUPLE, WEAKLY_BLOCKING,
    HedonicInstance, Partition, Witness, compare,
)
from .params import ParameterReport, feedback_arc_set, measure_parameters
from .search import ea_nash_exist_fas, nash_search_symmetric, welfare
from .stability import (
    CONCEPTS, blocking_tuples, check_concept, check_witness, envy_witnesses, is_blocking, verify,
)

__all__ = [
    "ADDITIVE", "BLOCKING", "CONCEPTS", "EA", "ENVY", "FA", "MODELS", "TUPLE", "WEAKLY_BLOCKING",
    "HedonicInstance", "ParameterReport", "Partition", "Witness",
    "blocking_tuples", "check_concept", "check_witness", "compare", "ea_nash_exist_fas",
    "envy_witnesses", "fa_core_verify_bounded", "fa_core_verify_colorcoded", "fa_scc_partition",
    "fa_unbounded_blocking", "feedback_arc_set", "is_blocking", "measure_parameters",
    "nash_search_symmetric", "trial_count", "verify", "welfare",
]
