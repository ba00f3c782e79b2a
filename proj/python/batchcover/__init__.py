"""Fractional batched set cover toolkit.

Adversarial worst-case instance generators, the trivial and dedicated
discretized primal-dual algorithms, exact shattering / VC-dimension checks,
an exact offline oracle, and a competitive-ratio experiment harness.
"""

from ._batchcover import (
    AdversaryImpossible,
    Batch,
    BoundUndefined,
    Element,
    Infeasible,
    Instance,
    InvalidArguments,
    RunResult,
    SetSystem,
    TooLarge,
    TracePoint,
    adversary_search,
    check_adversary_restriction,
    covering_sets_of,
    gen_batched_worst,
    gen_online_worst,
    harmonic,
    harmonic_split_inequality,
    is_shattered,
    lower_bound,
    offline_opt,
    run_dedicated,
    run_grid,
    run_trivial,
    validate_instance,
    vc_dimension,
    x_value,
)

__all__ = [
    "AdversaryImpossible",
    "Batch",
    "BoundUndefined",
    "Element",
    "Infeasible",
    "Instance",
    "InvalidArguments",
    "RunResult",
    "SetSystem",
    "TooLarge",
    "TracePoint",
    "adversary_search",
    "check_adversary_restriction",
    "covering_sets_of",
    "gen_batched_worst",
    "gen_online_worst",
    "harmonic",
    "harmonic_split_inequality",
    "is_shattered",
    "lower_bound",
    "offline_opt",
    "run_dedicated",
    "run_grid",
    "run_trivial",
    "validate_instance",
    "vc_dimension",
    "x_value",
]
