"""Coalition value of the transaction-cooperation game.

A coalition of transactions is worth the revenue the greedy combinatorial
auction collects when only searchers whose whole bundle lies inside the
coalition may participate.  The empty coalition is worth zero.  Values
are rule-dependent, so a cache is bound to one (instance, rule) pair.

CharacteristicCache is safe to share between threads: entries are
immutable Money values inserted with plain dict assignment, and a
duplicated computation is benign because the function is pure.
"""

from __future__ import annotations

from typing import NamedTuple, Optional

from .auction import RankedEntry, greedy_revenue
from .errors import InfeasibleSizeError
from .instance import (
    AuctionInstance,
    PaymentRule,
    ValuationMode,
    instance_fingerprint,
)
from .money import Money, ZERO

FULL_ENUMERATION_LIMIT = 20


class CharacteristicCache:
    """Memoized coalition values for one instance under one rule."""

    __slots__ = ("instance", "rule", "_entries", "_values", "_fingerprint")

    def __init__(self, inst: AuctionInstance, rule: Optional[PaymentRule] = None):
        inst.require_mode(ValuationMode.SINGLE_MINDED, "coalition_value")
        self.instance = inst
        self.rule = rule if rule is not None else inst.payment_rule
        self._entries = RankedEntry.for_instance(inst)
        self._values: dict[int, Money] = {0: ZERO}
        self._fingerprint: Optional[str] = None

    @property
    def fingerprint(self) -> str:
        if self._fingerprint is None:
            self._fingerprint = f"{instance_fingerprint(self.instance)}:{self.rule.value}"
        return self._fingerprint

    def __len__(self) -> int:
        return len(self._values)

    def value(self, coalition: int) -> Money:
        v = self._values.get(coalition)
        if v is None:
            # the filter preserves scan order, so the sub-auction ranking
            # is the induced ranking of the eligible searchers
            eligible = [e for e in self._entries if not (e.mask & ~coalition)]
            v = greedy_revenue(eligible, self.rule)
            self._values[coalition] = v
        return v


def _use_cache(
    inst: AuctionInstance,
    rule: Optional[PaymentRule],
    cache: Optional[CharacteristicCache],
) -> CharacteristicCache:
    if cache is None:
        return CharacteristicCache(inst, rule)
    if cache.instance is not inst:
        raise ValueError("cache belongs to a different instance")
    if rule is not None and cache.rule is not rule:
        raise ValueError(f"cache rule {cache.rule.value} != requested {rule.value}")
    return cache


def coalition_value(
    inst: AuctionInstance,
    coalition: int,
    rule: Optional[PaymentRule] = None,
    cache: Optional[CharacteristicCache] = None,
) -> Money:
    """Auction revenue among searchers whose bundles fit the coalition."""
    if coalition < 0 or coalition >> inst.n:
        raise ValueError("coalition mask out of range")
    return _use_cache(inst, rule, cache).value(coalition)


def marginal_contribution(
    inst: AuctionInstance,
    coalition: int,
    t_j: int,
    rule: Optional[PaymentRule] = None,
    cache: Optional[CharacteristicCache] = None,
) -> Money:
    """Value added by joining transaction t_j to a coalition excluding it."""
    bit = 1 << t_j
    if t_j < 0 or t_j >= inst.n:
        raise ValueError(f"transaction {t_j} out of range")
    if coalition & bit:
        raise ValueError(f"transaction {t_j} already in the coalition")
    c = _use_cache(inst, rule, cache)
    return c.value(coalition | bit) - c.value(coalition)


class UniqueMarginals(NamedTuple):
    count: int
    values: frozenset[Money]


def count_unique_marginals(
    inst: AuctionInstance,
    rule: Optional[PaymentRule] = None,
    cache: Optional[CharacteristicCache] = None,
    limit: int = FULL_ENUMERATION_LIMIT,
) -> UniqueMarginals:
    """Distinct marginal contributions over all (coalition, joiner) pairs.

    Exhaustive over n * 2^(n-1) pairs, so refused past the limit.
    """
    n = inst.n
    if n > limit:
        raise InfeasibleSizeError(
            f"full marginal enumeration needs n <= {limit}, got {n}"
        )
    c = _use_cache(inst, rule, cache)
    seen: set[Money] = set()
    for coalition in range(1 << n):
        base = c.value(coalition)
        rest = ~coalition & ((1 << n) - 1)
        while rest:
            bit = rest & -rest
            rest ^= bit
            seen.add(c.value(coalition | bit) - base)
    return UniqueMarginals(count=len(seen), values=frozenset(seen))
