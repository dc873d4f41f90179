"""Domain types, validation, and the JSON instance format.

Transactions are dense 0-based integer indices; coalitions are int bit
masks (bit j set means transaction j is present).  Searchers carry either
a single-minded (bundle, bid) pair or a per-transaction additive value
vector.  All instances are immutable.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Union

from .errors import InstanceFormatError, ModeMismatchError, ValidationError, Violation
from .money import Money

TransactionId = int

# Exact exponential-path ceiling; wider masks still work (Python ints are
# unbounded) but exact Shapley enumeration is refused past this.
MAX_EXACT_TRANSACTIONS = 63


class ValuationMode(str, Enum):
    ADDITIVE = "additive"
    SINGLE_MINDED = "single_minded"


class PaymentRule(str, Enum):
    """Tie variants of the greedy critical-payment scan (step 9).

    STRICT charges winner i the bid of the first later searcher j that
    conflicts with i and with no earlier searcher other than i.
    FIRST_CONFLICT drops the second condition and charges the first later
    conflicting bid outright.
    """

    STRICT = "strict"
    FIRST_CONFLICT = "first_conflict"


# -- coalition masks --------------------------------------------------


def coalition_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def full_coalition(n: int) -> int:
    return (1 << n) - 1


def coalition_size(mask: int) -> int:
    return mask.bit_count()


# -- bids --------------------------------------------------------------


@dataclass(frozen=True)
class SingleMindedBid:
    """All-or-nothing demand: pay up to `bid` for the whole `bundle`."""

    bundle: frozenset[int]
    bid: Money
    label: Optional[str] = None

    @cached_property
    def bundle_mask(self) -> int:
        return coalition_of(self.bundle)

    @property
    def size(self) -> int:
        return len(self.bundle)


@dataclass(frozen=True)
class AdditiveBid:
    """Per-transaction values; worth of a set is the sum over members."""

    values: tuple[Money, ...]
    label: Optional[str] = None


SearcherBid = Union[SingleMindedBid, AdditiveBid]


@dataclass(frozen=True)
class AuctionInstance:
    n: int
    mode: ValuationMode
    searchers: tuple[SearcherBid, ...]
    payment_rule: PaymentRule = PaymentRule.STRICT

    @property
    def m(self) -> int:
        return len(self.searchers)

    @property
    def full_mask(self) -> int:
        return full_coalition(self.n)

    def require_mode(self, mode: ValuationMode, operation: str) -> None:
        if self.mode is not mode:
            raise ModeMismatchError(
                f"{operation} requires a {mode.value} instance, got {self.mode.value}"
            )


# -- construction helpers ----------------------------------------------


def single_minded_instance(
    n: int,
    bids: Iterable[tuple[Iterable[int], Union[int, str, Fraction, Money]]],
    rule: PaymentRule = PaymentRule.STRICT,
) -> AuctionInstance:
    """Convenience constructor from (bundle, bid) pairs."""
    searchers = tuple(
        SingleMindedBid(bundle=frozenset(b), bid=Money(v)) for b, v in bids
    )
    return AuctionInstance(n=n, mode=ValuationMode.SINGLE_MINDED, searchers=searchers, payment_rule=rule)


def additive_instance(
    n: int, value_rows: Iterable[Iterable[Union[int, str, Fraction, Money]]]
) -> AuctionInstance:
    searchers = tuple(
        AdditiveBid(values=tuple(Money(v) for v in row)) for row in value_rows
    )
    return AuctionInstance(n=n, mode=ValuationMode.ADDITIVE, searchers=searchers)


# -- validation ---------------------------------------------------------


def validate_instance(inst: AuctionInstance) -> list[Violation]:
    """Check every instance invariant; an empty report means valid."""
    report: list[Violation] = []
    if inst.n < 0:
        report.append(Violation("transaction count must be nonnegative"))
    for i, s in enumerate(inst.searchers):
        if inst.mode is ValuationMode.SINGLE_MINDED:
            if not isinstance(s, SingleMindedBid):
                report.append(Violation("expected a single-minded bid", i))
                continue
            if not s.bundle:
                report.append(Violation("empty bundle", i))
            for t in s.bundle:
                if not isinstance(t, int) or t < 0 or t >= inst.n:
                    report.append(Violation(f"bundle index out of range: {t}", i))
            if not s.bid.is_rational:
                report.append(Violation("bid must be rational", i))
            elif s.bid < 0:
                report.append(Violation("negative bid", i))
        else:
            if not isinstance(s, AdditiveBid):
                report.append(Violation("expected an additive bid", i))
                continue
            if len(s.values) != inst.n:
                report.append(
                    Violation(
                        f"value vector length mismatch: {len(s.values)} != {inst.n}", i
                    )
                )
            for v in s.values:
                if not v.is_rational:
                    report.append(Violation("value must be rational", i))
                    break
                if v < 0:
                    report.append(Violation("negative value", i))
                    break
    return report


# -- JSON document format ----------------------------------------------
#
# {"mode": "single_minded", "n": 4, "payment_rule": "strict",
#  "searchers": [{"id": "s1", "bundle": [0, 1], "bid": "10"}, ...]}
#
# {"mode": "additive", "n": 2,
#  "searchers": [{"id": "s1", "values": ["10", "2"]}, ...]}
#
# Money values are strings parsed exactly (integers also accepted);
# floats are rejected to keep amounts exact.


def _parse_money(raw, where: str) -> Money:
    if isinstance(raw, bool) or isinstance(raw, float):
        raise InstanceFormatError(
            f"{where}: money must be a decimal string or integer, not {type(raw).__name__}"
        )
    if isinstance(raw, int):
        return Money(raw)
    if isinstance(raw, str):
        try:
            return Money(raw)
        except (ValueError, ZeroDivisionError) as exc:
            raise InstanceFormatError(f"{where}: unreadable money value {raw!r}") from exc
    raise InstanceFormatError(f"{where}: money must be a decimal string or integer")


def parse_instance(text: str) -> AuctionInstance:
    """Parse and validate an instance document.

    Raises InstanceFormatError for syntax/shape problems and
    ValidationError (with the full violation report) for invariant
    violations, in that order.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")

    try:
        mode = ValuationMode(doc["mode"])
    except KeyError:
        raise InstanceFormatError("missing required field: mode")
    except ValueError:
        raise InstanceFormatError(f"unknown mode: {doc['mode']!r}")

    n = doc.get("n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise InstanceFormatError("field n must be an integer")

    rule = PaymentRule.STRICT
    if mode is ValuationMode.SINGLE_MINDED and "payment_rule" in doc:
        try:
            rule = PaymentRule(doc["payment_rule"])
        except ValueError:
            raise InstanceFormatError(f"unknown payment_rule: {doc['payment_rule']!r}")

    raw_searchers = doc.get("searchers")
    if not isinstance(raw_searchers, list):
        raise InstanceFormatError("field searchers must be a list")

    pre_report: list[Violation] = []
    searchers: list[SearcherBid] = []
    for i, entry in enumerate(raw_searchers):
        if not isinstance(entry, dict):
            raise InstanceFormatError(f"searcher {i}: must be an object")
        label = entry.get("id")
        if label is not None and not isinstance(label, str):
            raise InstanceFormatError(f"searcher {i}: id must be a string")
        if mode is ValuationMode.SINGLE_MINDED:
            bundle = entry.get("bundle")
            if not isinstance(bundle, list) or not all(
                isinstance(t, int) and not isinstance(t, bool) for t in bundle
            ):
                raise InstanceFormatError(f"searcher {i}: bundle must be a list of integers")
            if len(set(bundle)) != len(bundle):
                # frozenset would silently drop these, so catch them here
                pre_report.append(Violation("duplicate bundle index", i))
            bid = _parse_money(entry.get("bid"), f"searcher {i} bid")
            searchers.append(SingleMindedBid(frozenset(bundle), bid, label))
        else:
            values = entry.get("values")
            if not isinstance(values, list):
                raise InstanceFormatError(f"searcher {i}: values must be a list")
            row = tuple(_parse_money(v, f"searcher {i} value") for v in values)
            searchers.append(AdditiveBid(row, label))

    inst = AuctionInstance(n=n, mode=mode, searchers=tuple(searchers), payment_rule=rule)
    report = pre_report + validate_instance(inst)
    if report:
        raise ValidationError(report)
    return inst


def render_instance(inst: AuctionInstance) -> str:
    """Inverse of parse_instance: parse(render(inst)) == inst."""
    doc: dict = {"mode": inst.mode.value, "n": inst.n}
    if inst.mode is ValuationMode.SINGLE_MINDED:
        doc["payment_rule"] = inst.payment_rule.value
    entries = []
    for s in inst.searchers:
        e: dict = {}
        if s.label is not None:
            e["id"] = s.label
        if isinstance(s, SingleMindedBid):
            e["bundle"] = sorted(s.bundle)
            e["bid"] = str(s.bid.as_fraction())
        else:
            e["values"] = [str(v.as_fraction()) for v in s.values]
        entries.append(e)
    doc["searchers"] = entries
    return json.dumps(doc, indent=2)


def instance_fingerprint(inst: AuctionInstance) -> str:
    """Stable short digest of the instance content (cache diagnostics)."""
    return hashlib.sha256(render_instance(inst).encode()).hexdigest()[:16]


def restrict_searchers(inst: AuctionInstance, coalition: int) -> set[int]:
    """Searcher indices whose whole bundle lies inside the coalition."""
    inst.require_mode(ValuationMode.SINGLE_MINDED, "restrict_searchers")
    return {
        i
        for i, s in enumerate(inst.searchers)
        if s.bundle_mask & ~coalition == 0
    }
