from __future__ import annotations

import json

import pytest

from mevmatch.errors import InstanceFormatError, ModeMismatchError, ValidationError
from mevmatch.instance import (
    AuctionInstance,
    PaymentRule,
    ValuationMode,
    additive_instance,
    coalition_of,
    coalition_size,
    full_coalition,
    instance_fingerprint,
    members,
    parse_instance,
    render_instance,
    restrict_searchers,
    single_minded_instance,
    validate_instance,
)

from conftest import EXAMPLE_DOC


def test_mask_helpers():
    assert coalition_of([0, 2, 5]) == 0b100101
    assert members(0b100101) == (0, 2, 5)
    assert full_coalition(4) == 0b1111
    assert coalition_size(0b1011) == 3
    assert coalition_of([]) == 0
    assert members(0) == ()


def test_parse_example(example_instance):
    inst = example_instance
    assert inst.n == 4 and inst.m == 3
    assert inst.mode is ValuationMode.SINGLE_MINDED
    assert inst.payment_rule is PaymentRule.STRICT  # default
    assert inst.searchers[0].bundle == frozenset({0, 1})
    assert inst.searchers[0].bid == 10
    assert inst.searchers[2].label == "s3"
    assert inst.searchers[1].bundle_mask == 0b1100


def test_parse_additive():
    doc = json.dumps(
        {
            "mode": "additive",
            "n": 2,
            "searchers": [
                {"id": "a", "values": ["10", "2"]},
                {"id": "b", "values": ["6", "8"]},
            ],
        }
    )
    inst = parse_instance(doc)
    assert inst.mode is ValuationMode.ADDITIVE
    assert inst.searchers[1].values[1] == 8


def test_round_trip(example_instance):
    again = parse_instance(render_instance(example_instance))
    assert again == example_instance
    add = additive_instance(3, [[1, 2, 3], ["1/2", 0, "7"]])
    assert parse_instance(render_instance(add)) == add


def test_fingerprint_stability(example_instance):
    f1 = instance_fingerprint(example_instance)
    f2 = instance_fingerprint(parse_instance(EXAMPLE_DOC))
    assert f1 == f2 and len(f1) == 16
    other = single_minded_instance(4, [({0}, 1)])
    assert instance_fingerprint(other) != f1


def test_syntax_errors_are_format_errors():
    with pytest.raises(InstanceFormatError):
        parse_instance("{not json")
    with pytest.raises(InstanceFormatError):
        parse_instance('["list"]')
    with pytest.raises(InstanceFormatError):
        parse_instance('{"mode": "nope", "n": 1, "searchers": []}')
    with pytest.raises(InstanceFormatError):
        parse_instance('{"mode": "single_minded", "n": "1", "searchers": []}')
    with pytest.raises(InstanceFormatError):
        # floats carry rounding; the format demands exact strings
        parse_instance(
            '{"mode": "single_minded", "n": 1, "searchers": [{"bundle": [0], "bid": 1.5}]}'
        )


def test_out_of_range_is_validation_error():
    doc = json.dumps(
        {
            "mode": "single_minded",
            "n": 4,
            "searchers": [{"id": "s", "bundle": [7], "bid": "1"}],
        }
    )
    with pytest.raises(ValidationError) as exc:
        parse_instance(doc)
    assert any("bundle index out of range" in v.message for v in exc.value.violations)
    assert exc.value.violations[0].searcher == 0


def test_empty_bundle_rejected():
    doc = json.dumps(
        {"mode": "single_minded", "n": 2, "searchers": [{"bundle": [], "bid": "1"}]}
    )
    with pytest.raises(ValidationError) as exc:
        parse_instance(doc)
    assert any("empty bundle" in v.message for v in exc.value.violations)


def test_duplicate_bundle_index_rejected():
    doc = json.dumps(
        {"mode": "single_minded", "n": 3, "searchers": [{"bundle": [0, 1, 1], "bid": "1"}]}
    )
    with pytest.raises(ValidationError) as exc:
        parse_instance(doc)
    assert any("duplicate bundle index" in v.message for v in exc.value.violations)


def test_negative_bid_rejected():
    doc = json.dumps(
        {"mode": "single_minded", "n": 1, "searchers": [{"bundle": [0], "bid": "-3"}]}
    )
    with pytest.raises(ValidationError) as exc:
        parse_instance(doc)
    assert any("negative bid" in v.message for v in exc.value.violations)


def test_value_length_mismatch():
    doc = json.dumps(
        {"mode": "additive", "n": 3, "searchers": [{"values": ["1", "2"]}]}
    )
    with pytest.raises(ValidationError) as exc:
        parse_instance(doc)
    assert any("length mismatch" in v.message for v in exc.value.violations)


def test_validate_is_reusable(example_instance):
    assert validate_instance(example_instance) == []
    bad = single_minded_instance(2, [({5}, 1)])
    report = validate_instance(bad)
    assert len(report) == 1 and report[0].searcher == 0


def test_zero_searchers_is_valid():
    inst = parse_instance('{"mode": "single_minded", "n": 3, "searchers": []}')
    assert inst.m == 0
    assert validate_instance(inst) == []


def test_restrict_searchers(example_instance):
    # only the {0,1} bundle fits inside {t0, t1}
    assert restrict_searchers(example_instance, 0b0011) == {0}
    assert restrict_searchers(example_instance, 0b1111) == {0, 1, 2}
    assert restrict_searchers(example_instance, 0b1010) == {2}
    assert restrict_searchers(example_instance, 0) == set()


def test_restrict_rejects_additive():
    add = additive_instance(2, [[1, 2]])
    with pytest.raises(ModeMismatchError):
        restrict_searchers(add, 0b11)


def test_payment_rule_parsing():
    doc = json.dumps(
        {
            "mode": "single_minded",
            "n": 1,
            "payment_rule": "first_conflict",
            "searchers": [{"bundle": [0], "bid": "1"}],
        }
    )
    assert parse_instance(doc).payment_rule is PaymentRule.FIRST_CONFLICT
    with pytest.raises(InstanceFormatError):
        parse_instance(doc.replace("first_conflict", "bogus"))
