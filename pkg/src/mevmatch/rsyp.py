"""Randomized Shapley estimation from sampled transaction orderings.

The estimator averages marginal contributions over k orderings drawn
independently and uniformly (with replacement), one per substream index,
so a run is fully determined by (instance, rule, k, seed).  Each sampled
ordering contributes one marginal per transaction, which makes every
phi-tilde component an average of k i.i.d. terms bounded by the total
bid volume R*; a Hoeffding argument then sizes k for a target accuracy.

Estimates use exact arithmetic on top of the sampled orderings: the only
randomness is which orderings are drawn.  Marginal totals are grouped by
(prefix coalition, joiner) first, so coalition values are computed once
per distinct prefix instead of once per sample.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from math import factorial
from typing import Optional, Union

from .charfn import CharacteristicCache, _use_cache
from .errors import InfeasibleSizeError
from .instance import AuctionInstance, PaymentRule, SingleMindedBid
from .money import Money, ZERO
from .seeding import substream
from .shapley_exact import ShapleyResult, _maybe_gamma, _ordering_prefix_counts, _phi_from_prefix_counts

EXHAUSTIVE_LIMIT = 9


@dataclass(frozen=True)
class RsypConfig:
    """Sampling parameters; exhaustive=True replaces the k draws with a
    full enumeration of all n! orderings (the estimator then equals the
    exact permutation average)."""

    k: int
    seed: int = 0
    rule: PaymentRule = PaymentRule.STRICT
    exhaustive: bool = False

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("sample count k must be at least 1")


def sample_ordering(seed: int, index: int, n: int) -> list[int]:
    """The index-th sampled ordering of range(n) under a master seed."""
    order = list(range(n))
    substream(seed, index).shuffle(order)
    return order


def rsyp(
    inst: AuctionInstance,
    config: RsypConfig,
    cache: Optional[CharacteristicCache] = None,
) -> ShapleyResult:
    """Estimate the revenue attribution from sampled orderings."""
    n = inst.n
    c = _use_cache(inst, config.rule, cache)
    if config.exhaustive:
        if n > EXHAUSTIVE_LIMIT:
            raise InfeasibleSizeError(
                f"exhaustive mode needs n <= {EXHAUSTIVE_LIMIT}, got {n}"
            )
        orderings = itertools.permutations(range(n))
        k = factorial(n)
        seed = None
    else:
        orderings = (
            sample_ordering(config.seed, i, n) for i in range(config.k)
        )
        k = config.k
        seed = config.seed
    counts = _ordering_prefix_counts(orderings, n)
    phi = _phi_from_prefix_counts(counts, k, c)
    return ShapleyResult(
        phi=phi,
        gamma=_maybe_gamma(phi),
        method="rsyp",
        rule=c.rule,
        nu_grand=c.value(inst.full_mask),
        k=k,
        seed=seed,
    )


def total_bid_volume(inst: AuctionInstance) -> Money:
    """Sum of all bids: an upper bound R* on any coalition value, since
    revenue never exceeds what the winners bid."""
    total = ZERO
    for s in inst.searchers:
        if isinstance(s, SingleMindedBid):
            total = total + s.bid
        else:
            for v in s.values:
                total = total + v
    return total


def hoeffding_sample_size(
    r_star: Union[Money, int, float], t: Union[Money, int, float], delta: float
) -> int:
    """Smallest k with ceil(2 R*^2 / t^2 * ln(1/(1-delta))), at least 1.

    Guarantees P(|phi_tilde_j - phi_j| < t) >= delta per transaction when
    marginals lie in [-R*, R*] ... the two-sided Hoeffding bound on an
    average of k samples.
    """
    r = float(r_star)
    width = float(t)
    if width <= 0:
        raise ValueError("accuracy target t must be positive")
    if not 0 <= delta < 1:
        raise ValueError("confidence delta must lie in [0, 1)")
    if r < 0:
        raise ValueError("range bound must be nonnegative")
    k = math.ceil(2.0 * (r / width) ** 2 * -math.log1p(-delta))
    return max(1, k)
