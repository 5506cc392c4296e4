"""Plateau walk that sharpens one Hamilton-table entry, and the sweep.

For fixed r, every level ℓ yields the candidate bound
max(B(ℓ) + 2, ℓ + r) where B(ℓ) bounds the all-ones type of top degree
r − 1 at level ℓ.  B is constant on plateaus whose floors sit where the
largest extracted product stops being certified, so instead of scanning ℓ,
each probe jumps to just below the current plateau's floor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .obliterate import (
    EvalOptions,
    EvalStats,
    Evaluator,
    LevelTooLow,
    StepBudgetExceeded,
)
from .rdbound import HamiltonTable, RdBoundFn
from .typeseq import TypeSeq


@dataclass(frozen=True)
class PlateauProbe:
    level: int
    f_bound: int
    largest_product: int
    stats: EvalStats
    plateau_floor: int
    candidate: int


@dataclass
class SharpenReport:
    r: int
    probes: list[PlateauProbe] = field(default_factory=list)
    best_bound: Optional[int] = None
    status: str = "optimal"


def sharpen_h(
    r: int, table: HamiltonTable, opts: Optional[EvalOptions] = None
) -> SharpenReport:
    """Minimize max(B(ℓ) + 2, plateau floor + r) over the probe walk.

    Starts at ℓ = H(r) − r and steps to rd(largest product) − 1 after each
    probe.  Stops once B(ℓ) + 2 reaches the best candidate seen: B only
    grows as ℓ shrinks, so no later plateau can win.
    """
    if r < 4:
        raise ValueError("r must be >= 4")
    rdfn = RdBoundFn(table)
    ones = TypeSeq((1,) * (r - 2))
    evaluator = Evaluator(rdfn, opts)
    report = SharpenReport(r=r)
    level = table.entry(r) - r
    while level >= 1:
        try:
            cert = evaluator.bound_f(level, 0, ones)
        except LevelTooLow:
            if not report.probes:
                report.status = "level_too_low"
                return report
            break
        except StepBudgetExceeded:
            report.status = "budget_exhausted"
            break
        product = cert.stats.largest_product
        floor = rdfn.rd(product)
        candidate = max(cert.value + 2, floor + r)
        report.probes.append(
            PlateauProbe(level, cert.value, product, cert.stats, floor, candidate)
        )
        if report.best_bound is None or candidate < report.best_bound:
            report.best_bound = candidate
        if cert.value + 2 >= report.best_bound:
            break
        level = floor - 1
    return report


def sharpen_all(
    r_min: int,
    r_max: int,
    table: HamiltonTable,
    opts: Optional[EvalOptions] = None,
) -> tuple[HamiltonTable, list[SharpenReport]]:
    """Sweep r upward, feeding each improvement into the later runs."""
    if not 4 <= r_min <= r_max:
        raise ValueError("need 4 <= r_min <= r_max")
    reports = []
    for r in range(r_min, r_max + 1):
        report = sharpen_h(r, table, opts)
        reports.append(report)
        if report.best_bound is not None and report.best_bound < table.entry(r):
            table = table.update(r, report.best_bound)
    return table, reports
