"""Resolvent-degree verdicts for the 26 sporadic simple groups.

For a group acting on P^N with r algebraically independent invariant
forms of degrees d_1 <= ... <= d_r, the criterion RD(G) <= N - r holds
when the product of the degrees stays below the minimal permutation
degree mu(G) (generic freeness) and the evaluator certifies
bound(N - r, 0, type of the degrees) <= N.

The builtin dataset records, per group: the projective dimension N, the
combined invariant degrees, and the literature bound coming from the
minimal permutation representation (for report classification).  mu(G)
itself is external data and left unset; the freeness premise is then
reported as skipped rather than assumed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import prod
from typing import Iterable, Optional

from .obliterate import (
    BoundCertificate,
    EvalOptions,
    Evaluator,
    LevelTooLow,
)
from .rdbound import HamiltonTable, RdBoundFn
from .typeseq import TypeSeq


@dataclass(frozen=True)
class GroupSpec:
    name: str
    proj_dim: int
    degrees: tuple[int, ...]
    mu: Optional[int] = None
    mu_rd_bound: Optional[int] = None

    def __post_init__(self) -> None:
        if any(d < 2 for d in self.degrees):
            raise ValueError(f"{self.name}: invariant degrees must be >= 2")
        if self.proj_dim < len(self.degrees):
            raise ValueError(f"{self.name}: more invariants than dimensions")
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees)))


@dataclass(frozen=True)
class GroupVerdict:
    name: str
    claimed_level: int
    f_bound: Optional[int]
    f_target: int
    ok: bool
    freeness_checked: str  # "yes" | "skipped_no_mu" | "failed"
    error: Optional[str] = None
    certificate: Optional[BoundCertificate] = None


def degrees_to_type(degrees: Iterable[int]) -> TypeSeq:
    """Multiset of degrees to multiplicity sequence, e.g. {2,5,6} -> (1,0,0,1,1)."""
    degrees = tuple(degrees)
    if not degrees:
        return TypeSeq()
    if any(d < 2 for d in degrees):
        raise ValueError("invariant degrees must be >= 2")
    entries = [0] * (max(degrees) - 1)
    for d in degrees:
        entries[d - 2] += 1
    return TypeSeq(entries)


def verify_group(
    spec: GroupSpec,
    table: HamiltonTable,
    opts: Optional[EvalOptions] = None,
    evaluator: Optional[Evaluator] = None,
) -> GroupVerdict:
    """Check the dense-points inequality at level N - r (and freeness if mu given)."""
    level = spec.proj_dim - len(spec.degrees)
    target = spec.proj_dim
    if spec.mu is None:
        freeness = "skipped_no_mu"
    elif prod(spec.degrees) < spec.mu:
        freeness = "yes"
    else:
        freeness = "failed"
    if not spec.degrees:
        return GroupVerdict(spec.name, level, 0, target, freeness != "failed", freeness)
    if evaluator is None:
        evaluator = Evaluator(RdBoundFn(table), opts)
    try:
        cert = evaluator.bound_f(level, 0, degrees_to_type(spec.degrees))
    except LevelTooLow as exc:
        return GroupVerdict(
            spec.name, level, None, target, False, freeness, error=str(exc)
        )
    ok = cert.value <= target and freeness != "failed"
    return GroupVerdict(
        spec.name, level, cert.value, target, ok, freeness, certificate=cert
    )


def verify_all(
    specs: Iterable[GroupSpec],
    table: HamiltonTable,
    opts: Optional[EvalOptions] = None,
) -> list[GroupVerdict]:
    evaluator = Evaluator(RdBoundFn(table), opts)
    return [verify_group(s, table, opts, evaluator) for s in specs]


def load_groups(path: str) -> list[GroupSpec]:
    """JSON array of {name, proj_dim, degrees, mu?, mu_rd_bound?}."""
    with open(path, encoding="utf-8") as fh:
        docs = json.load(fh)
    return [
        GroupSpec(
            name=d["name"],
            proj_dim=int(d["proj_dim"]),
            degrees=tuple(int(x) for x in d["degrees"]),
            mu=int(d["mu"]) if d.get("mu") is not None else None,
            mu_rd_bound=int(d["mu_rd_bound"]) if d.get("mu_rd_bound") is not None else None,
        )
        for d in docs
    ]


# name, literature bound via minimal permutation degree, N, invariant degrees
_BUILTIN = (
    ("J2", 93, 5, ()),
    ("M11", 6, 9, (2, 3)),
    ("M12", 7, 10, (2, 3)),
    ("M22", 16, 9, (4,)),
    ("Suz", 1782, 11, (12,)),
    ("J3", 78, 17, (6,)),
    ("M23", 17, 21, (2, 3, 4)),
    ("M24", 18, 22, (2, 3, 4, 5)),
    ("HS", 93, 21, (2, 4, 5)),
    ("McL", 267, 21, (2, 5, 6)),
    ("Co2", 268, 22, (2, 6)),
    ("Co3", 2291, 22, (2, 8)),
    ("Co1", 98269, 23, (2, 12)),
    ("Ru", 4051, 27, (4, 8)),
    ("He", 2049, 50, (3, 4, 5)),
    ("J1", 258, 55, (2, 3, 4, 4)),
    ("Fi22", 3501, 77, (2, 6, 8)),
    ("HN", 1139988, 132, (2, 6, 7)),
    ("Th", 143126986, 247, (2, 8, 8)),
    ("ON", 122749, 341, (6, 6, 6)),
    ("Fi23", 31661, 781, (2, 3, 4, 5, 5, 6)),
    ("Fi24'", 306925, 782, (3, 6, 6, 9)),
    ("J4", 173067375, 1332, (4, 6, 6, 7)),
    ("Ly", 8835143, 2479, (6, 6, 6, 6)),
    ("B", 13571954984, 4370, (2, 4, 6, 8, 8, 8)),
    ("M", 97239461142009185977, 196882, (2, 3, 4, 5, 6, 6, 6, 7, 7, 7)),
)


def builtin_groups() -> list[GroupSpec]:
    return [
        GroupSpec(name=n, proj_dim=dim, degrees=degs, mu_rd_bound=mu_bound)
        for n, mu_bound, dim, degs in _BUILTIN
    ]
