"""Exact-versus-sampled attribution comparison harness.

Per generated instance, computes the exact share vector and the sampled
estimate, and emits one CSV row per transaction plus a trailing summary
row.  Instances whose revenue attribution sums to zero have no share
vector; their rows carry empty cells and are excluded from the error
statistics but counted in the summary.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Optional, Sequence

from .charfn import CharacteristicCache
from .errors import InfeasibleSizeError
from .generator import ExperimentConfig, generate_random_instance
from .instance import AuctionInstance, ValuationMode
from .rsyp import RsypConfig, rsyp
from .shapley_exact import shapley_subset

COMPARE_EXACT_LIMIT = 9


@dataclass(frozen=True)
class CompareRow:
    instance_id: int
    t_index: int
    gamma_exact: Optional[float]
    gamma_rsyp: Optional[float]
    abs_err: Optional[float]


@dataclass(frozen=True)
class CompareSummary:
    instances: int
    rows: int
    degenerate_instances: int  # no defined shares (zero total)
    mean_abs_err: Optional[float]
    max_abs_err: Optional[float]


def run_experiment_compare(
    config: ExperimentConfig, instance: Optional[AuctionInstance] = None
) -> tuple[list[CompareRow], CompareSummary]:
    """Rows and summary for instance_count draws (or one fixed instance).

    A fixed instance still honors instance_count: the estimator reseeds
    per repetition, so repetitions show sampling spread.
    """
    if config.mode is not ValuationMode.SINGLE_MINDED and instance is None:
        raise ValueError("the comparison runs on single-minded instances")
    if config.n > COMPARE_EXACT_LIMIT:
        raise InfeasibleSizeError(
            f"the exact reference needs n <= {COMPARE_EXACT_LIMIT}, got {config.n}"
        )
    rows: list[CompareRow] = []
    errs: list[float] = []
    degenerate = 0
    for i in range(config.instance_count):
        inst = instance if instance is not None else generate_random_instance(config, i)
        cache = CharacteristicCache(inst, config.rule)
        exact = shapley_subset(inst, config.rule, cache)
        estimate = rsyp(
            inst,
            RsypConfig(k=config.samples, seed=config.estimator_seed(i), rule=config.rule),
            cache,
        )
        if exact.gamma is None or estimate.gamma is None:
            degenerate += 1
            for t in range(inst.n):
                rows.append(CompareRow(i, t, None, None, None))
            continue
        for t in range(inst.n):
            ge = float(exact.gamma[t])
            gr = float(estimate.gamma[t])
            err = float(abs(exact.gamma[t] - estimate.gamma[t]))
            errs.append(err)
            rows.append(CompareRow(i, t, ge, gr, err))
    summary = CompareSummary(
        instances=config.instance_count,
        rows=len(rows),
        degenerate_instances=degenerate,
        mean_abs_err=sum(errs) / len(errs) if errs else None,
        max_abs_err=max(errs) if errs else None,
    )
    return rows, summary


def write_compare_csv(
    rows: Sequence[CompareRow], summary: CompareSummary, fp: IO[str]
) -> None:
    """Data rows, then one summary row: instance_id="summary", t_index
    holds the data-row count, the next two columns carry mean/max error,
    abs_err holds the degenerate-instance count."""
    writer = csv.writer(fp)
    writer.writerow(["instance_id", "t_index", "gamma_exact", "gamma_rsyp", "abs_err"])

    def cell(x):
        return "" if x is None else repr(x)

    for r in rows:
        writer.writerow(
            [r.instance_id, r.t_index, cell(r.gamma_exact), cell(r.gamma_rsyp), cell(r.abs_err)]
        )
    writer.writerow(
        [
            "summary",
            summary.rows,
            cell(summary.mean_abs_err),
            cell(summary.max_abs_err),
            summary.degenerate_instances,
        ]
    )


def compare_rows_document(rows: Sequence[CompareRow], summary: CompareSummary) -> dict:
    return {
        "rows": [
            {
                "instance_id": r.instance_id,
                "t_index": r.t_index,
                "gamma_exact": r.gamma_exact,
                "gamma_rsyp": r.gamma_rsyp,
                "abs_err": r.abs_err,
            }
            for r in rows
        ],
        "summary": {
            "instances": summary.instances,
            "rows": summary.rows,
            "degenerate_instances": summary.degenerate_instances,
            "mean_abs_err": summary.mean_abs_err,
            "max_abs_err": summary.max_abs_err,
        },
    }
