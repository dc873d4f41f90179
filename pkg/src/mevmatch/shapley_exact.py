"""Exact Shapley attribution of auction revenue to transactions.

Three routes to the same vector: the weighted-subset sum, the average
marginal contribution over all orderings, and (for additive instances)
the closed form phi_j = second-highest value for transaction j.  The
redistribution share of a transaction is gamma_j = phi_j / sum(phi),
undefined when the total is zero.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .auction import second_price_schedule
from .charfn import CharacteristicCache, _use_cache
from .errors import InfeasibleSizeError, NormalizationUndefinedError
from .instance import AuctionInstance, PaymentRule, ValuationMode
from .money import Money, ZERO

SUBSET_LIMIT = 20
PERMUTATION_LIMIT = 9


@dataclass(frozen=True)
class ShapleyResult:
    """Attribution vector with provenance metadata.

    gamma is None when sum(phi) == 0 (no revenue to share).  k and seed
    are set only by the sampling estimator.
    """

    phi: tuple[Money, ...]
    gamma: Optional[tuple[Money, ...]]
    method: str
    rule: Optional[PaymentRule]
    nu_grand: Money
    k: Optional[int] = None
    seed: Optional[int] = None

    @property
    def gamma_defined(self) -> bool:
        return self.gamma is not None

    def to_document(self) -> dict:
        doc = {
            "method": self.method,
            "rule": self.rule.value if self.rule else None,
            "phi": [str(p) for p in self.phi],
            "gamma": [str(g) for g in self.gamma] if self.gamma else None,
            "nu_grand": str(self.nu_grand),
        }
        if self.k is not None:
            doc["k"] = self.k
        if self.seed is not None:
            doc["seed"] = self.seed
        return doc


def gamma_from_phi(phi: Sequence[Money]) -> tuple[Money, ...]:
    total = ZERO
    for p in phi:
        total = total + p
    if not total:
        raise NormalizationUndefinedError("phi sums to zero; shares are undefined")
    return tuple(p / total for p in phi)


def _maybe_gamma(phi: Sequence[Money]) -> Optional[tuple[Money, ...]]:
    try:
        return gamma_from_phi(phi)
    except NormalizationUndefinedError:
        return None


def shapley_subset(
    inst: AuctionInstance,
    rule: Optional[PaymentRule] = None,
    cache: Optional[CharacteristicCache] = None,
) -> ShapleyResult:
    """Weighted sum over coalitions:
    phi_j = sum_{S not ni j} |S|!(n-|S|-1)!/n! * (nu(S+j) - nu(S))."""
    n = inst.n
    if n > SUBSET_LIMIT:
        raise InfeasibleSizeError(f"subset enumeration needs n <= {SUBSET_LIMIT}, got {n}")
    c = _use_cache(inst, rule, cache)
    fact = [factorial(i) for i in range(n + 1)]
    weights = [Fraction(fact[s] * fact[n - 1 - s], fact[n]) for s in range(n)]
    phi = []
    for j in range(n):
        bit = 1 << j
        by_size = [ZERO] * n  # marginal totals grouped by |S|, weighted once
        for mask in range(1 << n):
            if mask & bit:
                continue
            by_size[mask.bit_count()] = by_size[mask.bit_count()] + (
                c.value(mask | bit) - c.value(mask)
            )
        total = ZERO
        for s in range(n):
            total = total + by_size[s] * weights[s]
        phi.append(total)
    phi_t = tuple(phi)
    return ShapleyResult(
        phi=phi_t,
        gamma=_maybe_gamma(phi_t),
        method="subset",
        rule=c.rule,
        nu_grand=c.value(inst.full_mask),
    )


def _ordering_prefix_counts(orderings, n: int) -> list[dict[int, int]]:
    """counts[j][prefix_mask] = number of orderings placing j right after
    that prefix.  Grouping first makes the Money arithmetic linear in the
    number of distinct (prefix, j) pairs instead of orderings."""
    counts: list[dict[int, int]] = [{} for _ in range(n)]
    for perm in orderings:
        mask = 0
        for j in perm:
            d = counts[j]
            d[mask] = d.get(mask, 0) + 1
            mask |= 1 << j
    return counts


def _phi_from_prefix_counts(
    counts: list[dict[int, int]], total_orderings: int, c: CharacteristicCache
) -> tuple[Money, ...]:
    phi = []
    for j, d in enumerate(counts):
        bit = 1 << j
        acc = ZERO
        for mask, cnt in d.items():
            acc = acc + (c.value(mask | bit) - c.value(mask)) * cnt
        phi.append(acc / total_orderings)
    return tuple(phi)


def shapley_permutation(
    inst: AuctionInstance,
    rule: Optional[PaymentRule] = None,
    cache: Optional[CharacteristicCache] = None,
) -> ShapleyResult:
    """Average marginal contribution over all n! transaction orderings."""
    n = inst.n
    if n > PERMUTATION_LIMIT:
        raise InfeasibleSizeError(
            f"orderings enumeration needs n <= {PERMUTATION_LIMIT}, got {n}"
        )
    c = _use_cache(inst, rule, cache)
    counts = _ordering_prefix_counts(itertools.permutations(range(n)), n)
    phi = _phi_from_prefix_counts(counts, factorial(n), c)
    return ShapleyResult(
        phi=phi,
        gamma=_maybe_gamma(phi),
        method="permutation",
        rule=c.rule,
        nu_grand=c.value(inst.full_mask),
    )


def shapley_additive_closed_form(inst: AuctionInstance) -> ShapleyResult:
    """For additive instances the game is a sum of one-transaction games,
    so each transaction's value is exactly its second price."""
    inst.require_mode(ValuationMode.ADDITIVE, "shapley_additive_closed_form")
    phi = second_price_schedule(inst)
    total = ZERO
    for p in phi:
        total = total + p
    return ShapleyResult(
        phi=phi,
        gamma=_maybe_gamma(phi),
        method="additive_closed",
        rule=None,
        nu_grand=total,
    )
