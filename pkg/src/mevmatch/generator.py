"""Seeded random instance generation for experiments.

Instance i of a run is drawn from substream (seed, 2*i); substream
(seed, 2*i + 1) is reserved for the sampling estimator on that instance,
so experiment reruns are byte-identical and instances are independent of
the estimator's draws.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import (
    AdditiveBid,
    AuctionInstance,
    PaymentRule,
    SingleMindedBid,
    ValuationMode,
)
from .money import Money
from .seeding import substream, substream_seed

DEFAULT_BID_LO = 1
DEFAULT_BID_HI = 100
DEFAULT_BUNDLE_CAP = 4


@dataclass(frozen=True)
class ExperimentConfig:
    """Shape and seeding of one experiment run.

    k is the estimator's sample count; None applies the 25 * n^2 default.
    Bids are uniform integers in [bid_lo, bid_hi]; single-minded bundles
    are uniform over sizes 1..min(n, bundle_cap).
    """

    n: int
    m: int
    instance_count: int = 1
    k: int | None = None
    seed: int = 0
    rule: PaymentRule = PaymentRule.STRICT
    mode: ValuationMode = ValuationMode.SINGLE_MINDED
    bid_lo: int = DEFAULT_BID_LO
    bid_hi: int = DEFAULT_BID_HI
    bundle_cap: int = DEFAULT_BUNDLE_CAP

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("need at least one transaction")
        if self.m < 0:
            raise ValueError("searcher count must be nonnegative")
        if self.instance_count < 1:
            raise ValueError("instance_count must be positive")
        if self.k is not None and self.k < 1:
            raise ValueError("sample count k must be positive")
        if not 0 <= self.bid_lo <= self.bid_hi:
            raise ValueError("need 0 <= bid_lo <= bid_hi")
        if self.bundle_cap < 1:
            raise ValueError("bundle_cap must be positive")

    @property
    def samples(self) -> int:
        return self.k if self.k is not None else 25 * self.n * self.n

    def instance_seed_index(self, i: int) -> int:
        return 2 * i

    def estimator_seed(self, i: int) -> int:
        return substream_seed(self.seed, 2 * i + 1)


def generate_random_instance(config: ExperimentConfig, index: int = 0) -> AuctionInstance:
    """Draw instance `index` of the run; same (config, index) same draw."""
    rng = substream(config.seed, config.instance_seed_index(index))
    if config.mode is ValuationMode.SINGLE_MINDED:
        searchers = []
        cap = min(config.n, config.bundle_cap)
        for _ in range(config.m):
            size = rng.randint(1, cap)
            bundle = frozenset(rng.sample(range(config.n), size))
            bid = Money(rng.randint(config.bid_lo, config.bid_hi))
            searchers.append(SingleMindedBid(bundle, bid))
        return AuctionInstance(
            n=config.n,
            mode=ValuationMode.SINGLE_MINDED,
            searchers=tuple(searchers),
            payment_rule=config.rule,
        )
    searchers = tuple(
        AdditiveBid(
            tuple(Money(rng.randint(config.bid_lo, config.bid_hi)) for _ in range(config.n))
        )
        for _ in range(config.m)
    )
    return AuctionInstance(
        n=config.n, mode=ValuationMode.ADDITIVE, searchers=searchers
    )
