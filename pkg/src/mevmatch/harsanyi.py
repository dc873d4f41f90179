"""Unanimity-game decomposition of the coalition game.

Every game over n transactions is a unique linear combination of
unanimity games: nu = sum_T dividend(T) * w_T, where w_T pays 1 exactly
to coalitions containing T.  Dividends come from the Moebius inversion
Delta_T = sum_{C subseteq T} (-1)^(|T|-|C|) nu(C), computed here with an
in-place subset transform in O(n * 2^n) exact operations.  Since the
Shapley value of w_T splits 1 equally among the members of T, linearity
gives phi_j = sum over stored T containing j of Delta_T / |T|.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Mapping, Optional

from .charfn import CharacteristicCache, _use_cache
from .errors import InfeasibleSizeError
from .instance import AuctionInstance, PaymentRule, coalition_size
from .money import Money, ZERO
from .shapley_exact import ShapleyResult, _maybe_gamma

DIVIDEND_LIMIT = 16


def unanimity_shapley(carrier: int, t_j: int) -> Fraction:
    """Shapley value of transaction t_j in the unanimity game on carrier."""
    if carrier == 0:
        raise ValueError("unanimity games need a non-empty carrier")
    if carrier >> t_j & 1:
        return Fraction(1, coalition_size(carrier))
    return Fraction(0)


@dataclass(frozen=True)
class DividendTable:
    """Sparse dividend map; absent non-empty coalitions have dividend 0."""

    n: int
    values: Mapping[int, Money]

    def dividend(self, coalition: int) -> Money:
        return self.values.get(coalition, ZERO)


def harsanyi_dividends(nu_table: Mapping[int, Money], n: int) -> DividendTable:
    """Moebius-invert a complete value table (all non-empty coalitions).

    nu_table may include the empty coalition; it is pinned to zero either
    way.  Exhaustive in 2^n, so refused past n = 16.
    """
    if n > DIVIDEND_LIMIT:
        raise InfeasibleSizeError(f"dividends need n <= {DIVIDEND_LIMIT}, got {n}")
    size = 1 << n
    f: list[Money] = [ZERO] * size
    for mask in range(1, size):
        try:
            f[mask] = nu_table[mask]
        except KeyError:
            raise ValueError(f"nu_table is missing coalition {mask:#x}")
    for b in range(n):
        bit = 1 << b
        for mask in range(size):
            if mask & bit:
                f[mask] = f[mask] - f[mask ^ bit]
    return DividendTable(
        n=n, values={mask: f[mask] for mask in range(1, size) if f[mask]}
    )


def dividends_from_game(
    inst: AuctionInstance,
    rule: Optional[PaymentRule] = None,
    cache: Optional[CharacteristicCache] = None,
) -> DividendTable:
    n = inst.n
    if n > DIVIDEND_LIMIT:
        raise InfeasibleSizeError(f"dividends need n <= {DIVIDEND_LIMIT}, got {n}")
    c = _use_cache(inst, rule, cache)
    table = {mask: c.value(mask) for mask in range(1, 1 << n)}
    return harsanyi_dividends(table, n)


def shapley_from_dividends(table: DividendTable, t_j: int) -> Money:
    """phi_j = sum over coalitions T containing j of Delta_T / |T|."""
    if t_j < 0 or t_j >= table.n:
        raise ValueError(f"transaction {t_j} out of range")
    total = ZERO
    for mask, d in table.values.items():
        if mask >> t_j & 1:
            total = total + d / coalition_size(mask)
    return total


def reconstruct_value(table: DividendTable, coalition: int) -> Money:
    """nu(T) = sum of dividends of the non-empty subsets of T."""
    total = ZERO
    for mask, d in table.values.items():
        if not (mask & ~coalition):
            total = total + d
    return total


def shapley_dividends(
    inst: AuctionInstance,
    rule: Optional[PaymentRule] = None,
    cache: Optional[CharacteristicCache] = None,
) -> ShapleyResult:
    """Full Shapley vector via the dividend route (method tag "dividends")."""
    c = _use_cache(inst, rule, cache)
    table = dividends_from_game(inst, rule, c)
    phi = tuple(shapley_from_dividends(table, j) for j in range(inst.n))
    return ShapleyResult(
        phi=phi,
        gamma=_maybe_gamma(phi),
        method="dividends",
        rule=c.rule,
        nu_grand=c.value(inst.full_mask),
    )


def write_dividend_csv(table: DividendTable, fp: IO[str]) -> None:
    """Rows mask (hex), size, dividend (exact string), mask ascending."""
    writer = csv.writer(fp)
    writer.writerow(["mask", "size", "dividend"])
    for mask in sorted(table.values):
        writer.writerow([hex(mask), coalition_size(mask), str(table.values[mask])])
