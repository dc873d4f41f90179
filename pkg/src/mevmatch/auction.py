"""Winner determination and payments for both valuation modes.

Additive instances run a per-transaction second-price (VCG) auction:
each transaction goes to its highest-value searcher at the second-highest
value.  Single-minded instances run a greedy combinatorial auction:
searchers are ranked by bid/sqrt(bundle size) and added while their
bundles stay disjoint from everything already allocated (a sqrt(m)
approximation to the optimal packing), then each winner pays a critical
value read off the ranking (two published variants of that scan exist,
see PaymentRule).

Ranking never touches real square roots: bid_i/sqrt(s_i) compares as
bid_i^2 * s_j vs bid_j^2 * s_i, which is exact on rational bids.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import Violation
from .instance import (
    AuctionInstance,
    PaymentRule,
    SingleMindedBid,
    ValuationMode,
)
from .money import Money, ZERO


@dataclass(frozen=True)
class RankedEntry:
    """One single-minded bid in scan position, with exact sort key."""

    searcher: int
    mask: int
    size: int
    bid: Money
    key: Fraction  # bid^2 / size, the square of the scan score

    @staticmethod
    def for_instance(inst: AuctionInstance) -> tuple["RankedEntry", ...]:
        entries = []
        for i, s in enumerate(inst.searchers):
            b = s.bid.as_fraction()
            entries.append(
                RankedEntry(i, s.bundle_mask, s.size, s.bid, Fraction(b * b, s.size))
            )
        entries.sort(key=lambda e: (-e.key, e.searcher))
        return tuple(entries)


def compare_rank_keys(bid_i: Money, size_i: int, bid_j: Money, size_j: int) -> int:
    """Sign of bid_i/sqrt(size_i) - bid_j/sqrt(size_j), exactly.

    Requires nonnegative rational bids and positive sizes.
    """
    if size_i <= 0 or size_j <= 0:
        raise ValueError("bundle sizes must be positive")
    bi, bj = bid_i.as_fraction(), bid_j.as_fraction()
    if bi < 0 or bj < 0:
        raise ValueError("bids must be nonnegative")
    lhs = bi * bi * size_j
    rhs = bj * bj * size_i
    if lhs > rhs:
        return 1
    if lhs < rhs:
        return -1
    return 0


@dataclass(frozen=True)
class AllocationOutcome:
    """Winners with their allocated transaction sets and payments.

    payments maps winning searcher index to its charge; non-winners pay
    nothing and are omitted.  rule is None for additive (VCG) outcomes.
    """

    winners: tuple[tuple[int, frozenset[int]], ...]
    payments: dict[int, Money]
    revenue: Money
    rule: Optional[PaymentRule]

    def to_document(self) -> dict:
        return {
            "winners": [
                {
                    "searcher": i,
                    "bundle": sorted(txs),
                    "payment": str(self.payments[i]),
                }
                for i, txs in self.winners
            ],
            "revenue": str(self.revenue),
            "rule": self.rule.value if self.rule else None,
        }


def _critical_payment(
    entries: Sequence[RankedEntry], pos: int, rule: PaymentRule
) -> Money:
    """Charge for the winner at scan position pos.

    The winner pays bid_j * sqrt(size_i/size_j) for the first later entry
    j that overlaps it; under STRICT, j must additionally be untouched by
    every entry ranked before j other than the winner itself.
    """
    winner = entries[pos]
    for qos in range(pos + 1, len(entries)):
        cand = entries[qos]
        if not (cand.mask & winner.mask):
            continue
        if rule is PaymentRule.STRICT:
            blocked = False
            for l in range(qos):
                if l == pos:
                    continue
                if entries[l].mask & cand.mask:
                    blocked = True
                    break
            if blocked:
                continue
        if winner.size == cand.size:
            return cand.bid
        return cand.bid * Money.sqrt(winner.size * cand.size) / cand.size
    return ZERO


def greedy_allocation(
    entries: Sequence[RankedEntry], rule: PaymentRule
) -> tuple[list[int], list[Money]]:
    """Positions of winners in scan order, with aligned payments."""
    taken = 0
    winner_positions = []
    for pos, e in enumerate(entries):
        if not (e.mask & taken):
            winner_positions.append(pos)
            taken |= e.mask
    payments = [_critical_payment(entries, pos, rule) for pos in winner_positions]
    return winner_positions, payments


def greedy_revenue(entries: Sequence[RankedEntry], rule: PaymentRule) -> Money:
    _, payments = greedy_allocation(entries, rule)
    total = ZERO
    for p in payments:
        total = total + p
    return total


def run_icasm(inst: AuctionInstance, rule: Optional[PaymentRule] = None) -> AllocationOutcome:
    """Greedy combinatorial auction for single-minded instances."""
    inst.require_mode(ValuationMode.SINGLE_MINDED, "run_icasm")
    if rule is None:
        rule = inst.payment_rule
    entries = RankedEntry.for_instance(inst)
    positions, payments = greedy_allocation(entries, rule)
    by_searcher = sorted(
        ((entries[pos].searcher, pay) for pos, pay in zip(positions, payments)),
        key=lambda pair: pair[0],
    )
    revenue = ZERO
    for _, pay in by_searcher:
        revenue = revenue + pay
    return AllocationOutcome(
        winners=tuple((i, inst.searchers[i].bundle) for i, _ in by_searcher),
        payments={i: pay for i, pay in by_searcher},
        revenue=revenue,
        rule=rule,
    )


def second_price_schedule(inst: AuctionInstance) -> tuple[Money, ...]:
    """Per-transaction second-highest value (0 with fewer than two bidders)."""
    inst.require_mode(ValuationMode.ADDITIVE, "second_price_schedule")
    out = []
    for t in range(inst.n):
        best = second = ZERO
        seen = 0
        for s in inst.searchers:
            v = s.values[t]
            seen += 1
            if v > best:
                best, second = v, best
            elif v > second:
                second = v
        out.append(second if seen >= 2 else ZERO)
    return tuple(out)


def run_spa_vcg(inst: AuctionInstance) -> AllocationOutcome:
    """Independent second-price auction per transaction."""
    inst.require_mode(ValuationMode.ADDITIVE, "run_spa_vcg")
    won: dict[int, list[int]] = {}
    pay: dict[int, Money] = {}
    revenue = ZERO
    seconds = second_price_schedule(inst)
    for t in range(inst.n):
        best_i = -1
        best = ZERO
        for i, s in enumerate(inst.searchers):
            v = s.values[t]
            if best_i < 0 or v > best:  # ties stay with the lowest index
                best_i, best = i, v
        if best_i < 0:
            continue
        won.setdefault(best_i, []).append(t)
        pay[best_i] = pay.get(best_i, ZERO) + seconds[t]
        revenue = revenue + seconds[t]
    winners = tuple((i, frozenset(ts)) for i, ts in sorted(won.items()))
    return AllocationOutcome(winners=winners, payments=pay, revenue=revenue, rule=None)


def run_auction(inst: AuctionInstance, rule: Optional[PaymentRule] = None) -> AllocationOutcome:
    """Dispatch on valuation mode."""
    if inst.mode is ValuationMode.ADDITIVE:
        return run_spa_vcg(inst)
    return run_icasm(inst, rule)


# -- desirable-property checks ------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    """Observed status of the matchmaking guarantees on one outcome.

    winner_ir: each winner pays at most its stated worth for what it got.
    creator_ir: each transaction's redistribution share is nonnegative.
    no_deficit: payments collected equal rewards paid out.
    Fairness of the share vector: sums to one, gives zero to transactions
    no bid touches, and equal shares to interchangeable transactions.
    """

    winner_ir: dict[int, bool]
    creator_ir: dict[int, bool]
    no_deficit: bool
    gamma_sums_to_one: bool
    null_transactions_zero: bool
    symmetric_transactions_equal: bool

    @property
    def violations(self) -> list[Violation]:
        out = []
        for i, ok in self.winner_ir.items():
            if not ok:
                out.append(Violation("winner pays more than its bid", i))
        for t, ok in self.creator_ir.items():
            if not ok:
                out.append(Violation(f"negative reward for transaction {t}"))
        for name in ("no_deficit", "gamma_sums_to_one", "null_transactions_zero",
                     "symmetric_transactions_equal"):
            if not getattr(self, name):
                out.append(Violation(f"{name} fails"))
        return out


def _winner_worth(inst: AuctionInstance, searcher: int, got: frozenset[int]) -> Money:
    s = inst.searchers[searcher]
    if isinstance(s, SingleMindedBid):
        return s.bid if s.bundle <= got else ZERO
    total = ZERO
    for t in got:
        total = total + s.values[t]
    return total


def _null_transactions(inst: AuctionInstance) -> list[int]:
    out = []
    for t in range(inst.n):
        if inst.mode is ValuationMode.SINGLE_MINDED:
            touched = any(t in s.bundle for s in inst.searchers)
        else:
            touched = any(s.values[t] != 0 for s in inst.searchers)
        if not touched:
            out.append(t)
    return out


def _swap_invariant(inst: AuctionInstance, a: int, b: int) -> bool:
    """True when exchanging transactions a and b permutes the bid multiset."""
    if inst.mode is ValuationMode.SINGLE_MINDED:
        def swap_mask(mask: int) -> int:
            bit_a, bit_b = mask >> a & 1, mask >> b & 1
            mask &= ~((1 << a) | (1 << b))
            return mask | bit_a << b | bit_b << a

        original = sorted((s.bundle_mask, s.bid.as_fraction()) for s in inst.searchers)
        swapped = sorted(
            (swap_mask(s.bundle_mask), s.bid.as_fraction()) for s in inst.searchers
        )
        return original == swapped
    def swap_row(vals: tuple[Money, ...]) -> tuple:
        row = list(vals)
        row[a], row[b] = row[b], row[a]
        return tuple(v.as_fraction() for v in row)

    original = sorted(tuple(v.as_fraction() for v in s.values) for s in inst.searchers)
    swapped = sorted(swap_row(s.values) for s in inst.searchers)
    return original == swapped


def check_matchmaking_properties(
    inst: AuctionInstance, outcome: AllocationOutcome, gamma: Sequence[Money]
) -> PropertyReport:
    """Evaluate the guarantees for an outcome and a share vector gamma."""
    if len(gamma) != inst.n:
        raise ValueError(f"gamma has length {len(gamma)}, expected {inst.n}")
    winner_ir = {
        i: outcome.payments[i] <= _winner_worth(inst, i, got)
        for i, got in outcome.winners
    }
    rewards = [g * outcome.revenue for g in gamma]
    creator_ir = {t: rewards[t] >= 0 for t in range(inst.n)}
    paid = ZERO
    for p in outcome.payments.values():
        paid = paid + p
    distributed = ZERO
    for r in rewards:
        distributed = distributed + r
    gamma_total = ZERO
    for g in gamma:
        gamma_total = gamma_total + g
    nulls = _null_transactions(inst)
    sym_ok = True
    for a in range(inst.n):
        for b in range(a + 1, inst.n):
            if _swap_invariant(inst, a, b) and gamma[a] != gamma[b]:
                sym_ok = False
    return PropertyReport(
        winner_ir=winner_ir,
        creator_ir=creator_ir,
        no_deficit=paid == distributed,
        gamma_sums_to_one=gamma_total == 1,
        null_transactions_zero=all(gamma[t] == 0 for t in nulls),
        symmetric_transactions_equal=sym_ok,
    )
