"""Instances whose marginal-contribution structure defeats sampling.

For a perfect square n = s^2, transactions form an s x s grid.  One
searcher family bids on the rows, a second on s pairwise-disjoint
cyclic diagonals, with bids laid out as decreasing powers of three so
the two families strictly interleave.  Row and diagonal bundles always
meet in exactly one cell, which makes the greedy auction's revenue on a
coalition swing between row wins and diagonal wins depending on single
transactions.

For every non-empty selection X of row indices there is a witness
coalition and a transaction whose marginal contribution (under the
first_conflict payment rule) equals

    sum(diag bids over X) - sum(row bids over X) + max selected row bid,

a +-1/0 signed sum of distinct powers of three, so all 2^s - 1
selections produce pairwise distinct marginals: exact attribution needs
exponentially many coalition looks in sqrt(n).  Under the strict rule
the coalition values collapse to single bids and the witness family
loses distinctness; strict results are reported but carry no closed
form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product
from math import isqrt
from typing import IO, NamedTuple, Optional, Sequence

from .charfn import CharacteristicCache, count_unique_marginals
from .errors import InfeasibleSizeError, Violation
from .instance import (
    AuctionInstance,
    PaymentRule,
    SingleMindedBid,
    ValuationMode,
    coalition_of,
)
from .money import Money

POWER3_LIMIT = 12
TARGETED_LIMIT = 12  # 2^s - 1 witness coalitions


@dataclass(frozen=True)
class HardInstance:
    n: int
    side: int  # sqrt(n)
    row_bundles: tuple[frozenset[int], ...]
    diag_bundles: tuple[frozenset[int], ...]
    row_bids: tuple[int, ...]
    diag_bids: tuple[int, ...]
    instance: AuctionInstance  # rows first, then diagonals


def build_hard_instance(n: int, shifts: Optional[Sequence[int]] = None) -> HardInstance:
    """Construct the grid instance; shifts picks the diagonal layout.

    shifts must be a permutation of range(sqrt(n)); diagonal k collects
    cell (r, (r + shifts[k]) mod s) from each row r.  The default is the
    identity (diagonal 0 is the main diagonal).
    """
    side = isqrt(n)
    if side * side != n:
        raise ValueError(f"transaction count must be a perfect square, got {n}")
    if side < 2:
        raise ValueError("the construction needs at least a 2x2 grid")
    if shifts is None:
        shifts = range(side)
    shifts = tuple(shifts)
    if sorted(shifts) != list(range(side)):
        raise ValueError("shifts must be a permutation of range(sqrt(n))")

    def cell(r: int, c: int) -> int:
        return r * side + c

    row_bundles = tuple(
        frozenset(cell(r, c) for c in range(side)) for r in range(side)
    )
    diag_bundles = tuple(
        frozenset(cell(r, (r + shifts[k]) % side) for r in range(side))
        for k in range(side)
    )
    row_bids = tuple(3 ** (2 * side - 2 * i - 1) for i in range(side))
    diag_bids = tuple(3 ** (2 * side - 2 * k - 2) for k in range(side))
    searchers = tuple(
        SingleMindedBid(b, Money(v), label=f"row{i}")
        for i, (b, v) in enumerate(zip(row_bundles, row_bids))
    ) + tuple(
        SingleMindedBid(b, Money(v), label=f"diag{k}")
        for k, (b, v) in enumerate(zip(diag_bundles, diag_bids))
    )
    inst = AuctionInstance(n=n, mode=ValuationMode.SINGLE_MINDED, searchers=searchers)
    return HardInstance(
        n=n,
        side=side,
        row_bundles=row_bundles,
        diag_bundles=diag_bundles,
        row_bids=row_bids,
        diag_bids=diag_bids,
        instance=inst,
    )


def verify_hard_instance(h: HardInstance) -> list[Violation]:
    """Check the structural invariants; an empty report means sound."""
    report: list[Violation] = []
    s = h.side
    if s * s != h.n:
        report.append(Violation("transaction count is not side^2"))
    if len(h.row_bundles) != s or len(h.diag_bundles) != s:
        report.append(Violation("family sizes must equal side"))
    for name, fam in (("row", h.row_bundles), ("diag", h.diag_bundles)):
        for i, b in enumerate(fam):
            if len(b) != s:
                report.append(Violation(f"{name} bundle {i} has size {len(b)} != {s}"))
            if any(t < 0 or t >= h.n for t in b):
                report.append(Violation(f"{name} bundle {i} leaves the grid"))
        for i in range(len(fam)):
            for j in range(i + 1, len(fam)):
                if fam[i] & fam[j]:
                    report.append(Violation(f"{name} bundles {i} and {j} overlap"))
    for i, rb in enumerate(h.row_bundles):
        for k, db in enumerate(h.diag_bundles):
            if len(rb & db) != 1:
                report.append(
                    Violation(f"row {i} and diagonal {k} share {len(rb & db)} cells, not 1")
                )
    ladder = []
    for i in range(min(len(h.row_bids), len(h.diag_bids))):
        ladder += [h.row_bids[i], h.diag_bids[i]]
    if any(a <= b for a, b in zip(ladder, ladder[1:])):
        report.append(Violation("bids do not strictly interleave"))
    inst = h.instance
    expected = tuple(zip(h.row_bundles + h.diag_bundles, h.row_bids + h.diag_bids))
    actual = tuple((sr.bundle, sr.bid) for sr in inst.searchers)
    if len(actual) != len(expected) or any(
        ab != eb or av != Money(ev) for (ab, av), (eb, ev) in zip(actual, expected)
    ):
        report.append(Violation("embedded instance disagrees with the families"))
    return report


class Power3Census(NamedTuple):
    distinct: bool
    count: int


def power3_sums(n: int, limit: int = POWER3_LIMIT) -> Power3Census:
    """Count distinct values of sum(a_i * 3^i) over a in {-1,0,1}^n.

    All 3^n signed sums are pairwise distinct (each power of three
    dominates everything below it), which is what the witness marginals
    lean on.
    """
    if n > limit:
        raise InfeasibleSizeError(f"power-of-three census needs n <= {limit}, got {n}")
    powers = [3 ** i for i in range(n)]
    sums = {
        sum(a * p for a, p in zip(assign, powers))
        for assign in product((-1, 0, 1), repeat=n)
    }
    return Power3Census(distinct=len(sums) == 3 ** n, count=len(sums))


@dataclass(frozen=True)
class WitnessRow:
    selection: tuple[int, ...]  # selected row indices
    t_u: int
    coalition: int  # the larger coalition T; the marginal joins t_u to T - t_u
    measured: Money
    closed_form: Money


@dataclass(frozen=True)
class WitnessCensus:
    rule: PaymentRule
    rows: tuple[WitnessRow, ...]
    distinct_count: int
    closed_form_holds: bool


def witness_marginals(
    h: HardInstance,
    rule: PaymentRule = PaymentRule.FIRST_CONFLICT,
    cache: Optional[CharacteristicCache] = None,
) -> WitnessCensus:
    """Evaluate the 2^s - 1 witness coalitions directly.

    Each selection X of rows pins t_u = the cell where the top selected
    row meets an unselected diagonal (the last diagonal when every row is
    selected), and measures nu(T) - nu(T - t_u) on the real game.
    """
    s = h.side
    if s > TARGETED_LIMIT:
        raise InfeasibleSizeError(
            f"witness enumeration needs sqrt(n) <= {TARGETED_LIMIT}, got {s}"
        )
    if cache is None:
        cache = CharacteristicCache(h.instance, rule)
    rows = []
    values = set()
    ok = True
    for bits in range(1, 1 << s):
        selection = tuple(x for x in range(s) if bits >> x & 1)
        a = selection[0]
        unselected = [w for w in range(s) if not (bits >> w & 1)]
        w = unselected[0] if unselected else s - 1
        (t_u,) = h.row_bundles[a] & h.diag_bundles[w]
        coalition = 0
        for x in selection:
            coalition |= coalition_of(h.row_bundles[x]) | coalition_of(h.diag_bundles[x])
        measured = cache.value(coalition) - cache.value(coalition & ~(1 << t_u))
        closed = Money(
            sum(h.diag_bids[x] for x in selection)
            - sum(h.row_bids[x] for x in selection)
            + h.row_bids[a]
        )
        if measured != closed:
            ok = False
        values.add(measured)
        rows.append(WitnessRow(selection, t_u, coalition, measured, closed))
    return WitnessCensus(
        rule=rule,
        rows=tuple(rows),
        distinct_count=len(values),
        closed_form_holds=ok,
    )


@dataclass(frozen=True)
class GrowthRow:
    n: int
    sqrt_n: int
    mode: str  # "full" or "targeted"
    rule: PaymentRule
    unique_count: int
    floor: int  # 2^sqrt(n) - 1

    @property
    def log2_count(self) -> float:
        return math.log2(self.unique_count) if self.unique_count else float("-inf")


def marginal_growth_table(
    sizes: Sequence[int],
    mode: str = "targeted",
    rule: PaymentRule = PaymentRule.FIRST_CONFLICT,
    full_limit: int = 16,
) -> list[GrowthRow]:
    """Distinct-marginal counts per instance size.

    full mode enumerates every (coalition, joiner) pair of the instance;
    targeted mode only evaluates the witness family.
    """
    if mode not in ("full", "targeted"):
        raise ValueError(f"unknown census mode: {mode!r}")
    out = []
    for n in sizes:
        h = build_hard_instance(n)
        if mode == "full":
            if n > full_limit:
                raise InfeasibleSizeError(
                    f"full census needs n <= {full_limit}, got {n}"
                )
            count = count_unique_marginals(h.instance, rule).count
        else:
            count = witness_marginals(h, rule).distinct_count
        out.append(
            GrowthRow(
                n=n,
                sqrt_n=h.side,
                mode=mode,
                rule=rule,
                unique_count=count,
                floor=(1 << h.side) - 1,
            )
        )
    return out


def write_growth_csv(rows: Sequence[GrowthRow], fp: IO[str]) -> None:
    import csv

    writer = csv.writer(fp)
    writer.writerow(
        ["n", "sqrt_n", "mode", "rule", "unique_count", "floor_2_sqrt_n_minus_1", "log2_count"]
    )
    for r in rows:
        writer.writerow(
            [r.n, r.sqrt_n, r.mode, r.rule.value, r.unique_count, r.floor, repr(r.log2_count)]
        )
