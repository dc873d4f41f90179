"""Matchmaking engine for MEV order-flow auctions.

Allocates transaction bundles to searchers (per-transaction second price
for additive bidders, greedy combinatorial for single-minded ones) and
redistributes the collected revenue to transaction creators in
proportion to each transaction's Shapley value in the induced
cooperation game, exactly or by sampling.
"""

from .auction import (
    AllocationOutcome,
    PropertyReport,
    check_matchmaking_properties,
    compare_rank_keys,
    run_auction,
    run_icasm,
    run_spa_vcg,
)
from .charfn import (
    CharacteristicCache,
    coalition_value,
    count_unique_marginals,
    marginal_contribution,
)
from .errors import (
    InfeasibleSizeError,
    InstanceFormatError,
    ModeMismatchError,
    NormalizationUndefinedError,
    ValidationError,
    Violation,
)
from .generator import ExperimentConfig, generate_random_instance
from .hardness import (
    HardInstance,
    build_hard_instance,
    marginal_growth_table,
    power3_sums,
    verify_hard_instance,
    witness_marginals,
)
from .harsanyi import (
    DividendTable,
    dividends_from_game,
    harsanyi_dividends,
    reconstruct_value,
    shapley_dividends,
    shapley_from_dividends,
    unanimity_shapley,
)
from .instance import (
    AdditiveBid,
    AuctionInstance,
    PaymentRule,
    SingleMindedBid,
    ValuationMode,
    additive_instance,
    coalition_of,
    full_coalition,
    members,
    parse_instance,
    render_instance,
    restrict_searchers,
    single_minded_instance,
    validate_instance,
)
from .money import Money
from .rsyp import RsypConfig, hoeffding_sample_size, rsyp, total_bid_volume
from .shapley_exact import (
    ShapleyResult,
    gamma_from_phi,
    shapley_additive_closed_form,
    shapley_permutation,
    shapley_subset,
)

__version__ = "0.1.0"

__all__ = [
    "AdditiveBid",
    "AllocationOutcome",
    "AuctionInstance",
    "CharacteristicCache",
    "DividendTable",
    "ExperimentConfig",
    "HardInstance",
    "InfeasibleSizeError",
    "InstanceFormatError",
    "ModeMismatchError",
    "Money",
    "NormalizationUndefinedError",
    "PaymentRule",
    "PropertyReport",
    "RsypConfig",
    "ShapleyResult",
    "SingleMindedBid",
    "ValidationError",
    "ValuationMode",
    "Violation",
    "additive_instance",
    "build_hard_instance",
    "check_matchmaking_properties",
    "coalition_of",
    "coalition_value",
    "compare_rank_keys",
    "count_unique_marginals",
    "dividends_from_game",
    "full_coalition",
    "gamma_from_phi",
    "generate_random_instance",
    "harsanyi_dividends",
    "hoeffding_sample_size",
    "marginal_contribution",
    "marginal_growth_table",
    "members",
    "parse_instance",
    "power3_sums",
    "reconstruct_value",
    "render_instance",
    "restrict_searchers",
    "rsyp",
    "run_auction",
    "run_icasm",
    "run_spa_vcg",
    "shapley_additive_closed_form",
    "shapley_dividends",
    "shapley_from_dividends",
    "shapley_permutation",
    "shapley_subset",
    "single_minded_instance",
    "total_bid_volume",
    "unanimity_shapley",
    "validate_instance",
    "verify_hard_instance",
    "witness_marginals",
]
