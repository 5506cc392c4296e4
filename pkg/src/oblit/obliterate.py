"""Certified upper bounds on the dense-points dimension of a type.

The evaluator alternates two reductions on a state (j, type, offset):

* extraction — remove a batch of forms whose degree product is certified
  admissible at the current level, gaining one plane dimension per form;
* planes-from-points — trade the accumulated j-planes for points on the
  j-th polar of the remaining type, at a known additive cost.

Every run yields a :class:`BoundCertificate` whose step list can be
replayed with independent sequence arithmetic to reproduce the value.
A closed form handles the pure-quadric tail, which dominates step counts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, prod
from typing import Optional

from .rdbound import RdBoundFn
from .typeseq import TypeSeq, _endo_raw, _pns_raw


class LevelTooLow(Exception):
    """The level cannot certify extraction of the type's top degree."""

    def __init__(self, level: int, degree: int):
        super().__init__(f"level {level} cannot extract a form of degree {degree}")
        self.level = level
        self.degree = degree


class StepBudgetExceeded(Exception):
    """The run was aborted after opts.max_steps reduction events."""

    def __init__(self, stats: "EvalStats"):
        super().__init__(f"step budget exhausted after {stats.total_steps} steps")
        self.stats = stats


class CertificateError(ValueError):
    """A certificate's recorded arithmetic failed re-validation."""


# -- steps and certificates ------------------------------------------------


@dataclass(frozen=True)
class Extract:
    extracted: TypeSeq
    product: int
    j_after: int


@dataclass(frozen=True)
class PlanesFromPts:
    j: int
    input: TypeSeq
    output: TypeSeq
    offset: int


@dataclass(frozen=True)
class QuadricFastPath:
    m2: int
    b: int
    q: int
    r_rem: int
    value: int


@dataclass(frozen=True)
class BaseCase:
    j: int


@dataclass(frozen=True)
class CoarseLine:
    input: TypeSeq
    output: TypeSeq
    offset: int


Step = Extract | PlanesFromPts | QuadricFastPath | BaseCase | CoarseLine


@dataclass
class EvalStats:
    """Run counters; degree keys are the top degree of the step's input type.

    The final base case counts as one planes application at degree 2, and
    the quadric fast path contributes the events its closed form stands in
    for, so totals line up with a fully expanded run.
    """

    extract_by_degree: dict[int, int] = field(default_factory=dict)
    planes_by_degree: dict[int, int] = field(default_factory=dict)
    total_steps: int = 0
    largest_product: int = 0
    steps_to_quadric: Optional[int] = None

    def count_extract(self, degree: int, n: int = 1) -> None:
        self.extract_by_degree[degree] = self.extract_by_degree.get(degree, 0) + n
        self.total_steps += n

    def count_planes(self, degree: int, n: int = 1) -> None:
        self.planes_by_degree[degree] = self.planes_by_degree.get(degree, 0) + n
        self.total_steps += n


@dataclass
class EvalOptions:
    strategy: str = "paper"
    quadric_fastpath: bool = True
    max_steps: int = 50_000_000
    step_record_limit: int = 100_000

    def __post_init__(self) -> None:
        if self.strategy not in ("paper", "greedy-continue"):
            raise ValueError(f"unknown strategy {self.strategy!r}")


@dataclass(frozen=True)
class BoundCertificate:
    level: int
    j: int
    typeseq: TypeSeq
    value: int
    steps: tuple[Step, ...]
    steps_elided: bool
    stats: EvalStats
    strategy: str
    table_id: str


# -- core evaluator ---------------------------------------------------------


def _trim(entries: tuple[int, ...]) -> tuple[int, ...]:
    k = len(entries)
    while k and entries[k - 1] == 0:
        k -= 1
    return entries[:k]


class Evaluator:
    """Bound engine bound to one rd function and one option set.

    Results are memoized per query triple (level, j, entries); certificates
    are immutable, so the cache can be shared across queries.
    """

    def __init__(self, rdfn: RdBoundFn, options: Optional[EvalOptions] = None):
        self.rdfn = rdfn
        self.options = options or EvalOptions()
        self._memo: dict[tuple[int, int, tuple[int, ...]], BoundCertificate] = {}
        # powers of d admissible below any ceiling seen so far, per degree
        self._powers: dict[int, list[int]] = {}

    # largest e >= 0 with d**e <= limit
    def _max_power(self, d: int, limit: int) -> int:
        if limit < d:
            return 0
        if d == 2:
            return limit.bit_length() - 1
        pows = self._powers.setdefault(d, [d])
        while pows[-1] <= limit:
            pows.append(pows[-1] * d)
        # pows[-1] > limit; find count of entries <= limit
        e = len(pows) - 1
        while e and pows[e - 1] > limit:
            e -= 1
        return e

    def _extract(
        self, entries: tuple[int, ...], ceiling: int
    ) -> tuple[tuple[int, ...], tuple[int, ...], int, int]:
        """One extraction event: scan degrees high to low, take what fits.

        Returns (extracted multiplicities, remaining type, product, j gained).
        Taking e forms of degree d at once equals e single extractions, so
        the strategy "paper" stops everything the first time a degree cannot
        be exhausted, exactly like the one-at-a-time loop it reproduces.
        """
        opts = self.options
        taken = [0] * len(entries)
        product = 1
        gained = 0
        for k in range(len(entries) - 1, -1, -1):
            avail = entries[k]
            if not avail:
                continue
            d = k + 2
            e = min(avail, self._max_power(d, ceiling // product))
            if e:
                product *= d**e
                taken[k] = e
                gained += e
            if e < avail and opts.strategy == "paper":
                break
        remaining = _trim(tuple(a - t for a, t in zip(entries, taken)))
        return _trim(tuple(taken)), remaining, product, gained

    def bound_f(self, level: int, j: int, m: TypeSeq) -> BoundCertificate:
        if level < 1:
            raise ValueError("level must be >= 1")
        if j < 0:
            raise ValueError("j must be >= 0")
        key = (level, j, m.entries)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        cert = self._run(level, j, m)
        self._memo[key] = cert
        return cert

    def _run(self, level: int, j: int, m: TypeSeq) -> BoundCertificate:
        opts = self.options
        rdfn = self.rdfn
        if m and rdfn.rd(m.top_degree) > level:
            raise LevelTooLow(level, m.top_degree)
        ceiling = rdfn.max_value_at_level(level)
        stats = EvalStats()
        steps: list[Step] = []
        elided = False
        record_limit = opts.step_record_limit
        max_work = opts.max_steps
        work = 0

        def record(step: Step) -> None:
            nonlocal elided
            if len(steps) < record_limit:
                steps.append(step)
            else:
                elided = True

        cur = m.entries
        cur_j = j
        offset = 0
        value: Optional[int] = None
        while value is None:
            work += 1
            if work > max_work:
                raise StepBudgetExceeded(stats)
            if not cur:
                # base case: j-planes in a j-dimensional ambient space
                record(BaseCase(cur_j))
                stats.count_planes(2)
                value = offset + cur_j
                break
            top = len(cur) + 1
            if cur_j >= 1:
                off = _pns_raw(cur, cur_j) + cur_j
                nxt = _trim(_endo_raw(cur, cur_j))
                record(PlanesFromPts(cur_j, TypeSeq(cur), TypeSeq(nxt), off))
                stats.count_planes(top)
                offset += off
                cur = nxt
                cur_j = 0
                continue
            if top == 2 and stats.steps_to_quadric is None:
                stats.steps_to_quadric = stats.total_steps
            if top == 2 and opts.quadric_fastpath:
                m2 = cur[0]
                b = min(m2, ceiling.bit_length() - 1)
                q, r_rem = divmod(m2, b)
                val = comb(q, 2) * b * b + q * b * (r_rem + 1) + r_rem
                record(QuadricFastPath(m2, b, q, r_rem, val))
                stats.count_extract(2, q)
                stats.count_planes(2, q)
                stats.largest_product = max(stats.largest_product, 1 << b)
                value = offset + val
                break
            taken, remaining, product, gained = self._extract(cur, ceiling)
            record(Extract(TypeSeq(taken), product, gained))
            stats.count_extract(top)
            stats.largest_product = max(stats.largest_product, product)
            cur = remaining
            cur_j = gained

        return BoundCertificate(
            level=level,
            j=j,
            typeseq=m,
            value=value,
            steps=tuple(steps),
            steps_elided=elided,
            stats=stats,
            strategy=opts.strategy,
            table_id=rdfn.table.fingerprint(),
        )


# -- module-level operations -------------------------------------------------


def extract(
    level: int, rdfn: RdBoundFn, j: int, m: TypeSeq, strategy: str = "paper"
) -> tuple[int, TypeSeq, int]:
    """One extraction event on its own: returns (new j, reduced type, product)."""
    if not m:
        raise ValueError("cannot extract from the zero type")
    if rdfn.rd(m.top_degree) > level:
        raise LevelTooLow(level, m.top_degree)
    ev = Evaluator(rdfn, EvalOptions(strategy=strategy))
    ceiling = rdfn.max_value_at_level(level)
    _, remaining, product, gained = ev._extract(m.entries, ceiling)
    return j + gained, TypeSeq(remaining), product


def planes_from_pts(j: int, m: TypeSeq) -> tuple[TypeSeq, int]:
    """Trade j planes for points on the j-th polar: (new type, additive cost)."""
    if j < 1:
        raise ValueError("j must be >= 1")
    return m.endo(j), m.prefix_norm_sum(j) + j


def quadric_bound(level: int, rdfn: RdBoundFn, m2: int) -> int:
    """Closed form for a type of m2 quadrics at j = 0.

    Equals the alternating evaluation restricted to quadrics: peel off b at
    a time, where b is the largest batch whose product 2**b the level
    certifies (capped at m2 itself).
    """
    if m2 < 0:
        raise ValueError("m2 must be >= 0")
    if m2 == 0:
        return 0
    ceiling = rdfn.max_value_at_level(level)
    b = min(m2, ceiling.bit_length() - 1)
    q, r_rem = divmod(m2, b)
    return comb(q, 2) * b * b + q * b * (r_rem + 1) + r_rem


def bound_f(
    level: int,
    rdfn: RdBoundFn,
    j: int,
    m: TypeSeq,
    opts: Optional[EvalOptions] = None,
) -> BoundCertificate:
    return Evaluator(rdfn, opts).bound_f(level, j, m)


def coarse_bound_f(level: int, rdfn: RdBoundFn, j: int, m: TypeSeq) -> int:
    """Lines-only envelope: eliminate all top-degree forms at once per stage.

    Weaker than the greedy evaluator but a closed polynomial in the entries;
    useful as a sanity ceiling and for the comparison tables.
    """
    entries = m.entries
    if not entries:
        return j
    if rdfn.rd(m.top_degree) > level:
        raise LevelTooLow(level, m.top_degree)
    acc = 0
    if j >= 1:
        acc += _pns_raw(entries, j) + j
        entries = _trim(_endo_raw(entries, j))
    while len(entries) > 1:
        n = len(entries) + 1
        mn = entries[-1]
        nxt = []
        for d in range(2, n):
            val = (n - d) * comb(mn + n - 1 - d, n + 1 - d)
            val += sum(
                comb(mn + i - d - 1, i - d) * entries[i - 2] for i in range(d, n)
            )
            nxt.append(val)
        acc += (n - 1) * comb(mn + n - 2, n)
        acc += sum(comb(mn + i - 2, i - 1) * entries[i - 2] for i in range(2, n))
        acc += mn
        entries = _trim(tuple(nxt))
    if entries:
        acc += comb(entries[0] + 1, 2)
    return acc


# -- replay ------------------------------------------------------------------


def replay(cert: BoundCertificate, rdfn: RdBoundFn) -> int:
    """Re-execute a certificate's steps and return the reproduced value.

    Every recorded step is re-validated with sequence arithmetic; any
    mismatch (including a final value differing from cert.value) raises
    CertificateError.
    """
    if cert.steps_elided:
        raise CertificateError("certificate trace was elided; cannot replay")
    level = cert.level
    cur = cert.typeseq
    cur_j = cert.j
    offset = 0
    value: Optional[int] = None
    for step in cert.steps:
        if value is not None:
            raise CertificateError("steps continue past a terminal step")
        if isinstance(step, PlanesFromPts):
            if step.j != cur_j or step.j < 1:
                raise CertificateError(f"planes step expects j={step.j}, state has {cur_j}")
            if step.input != cur:
                raise CertificateError("planes step input does not match state")
            if step.output != cur.endo(step.j):
                raise CertificateError("planes step output is not the polar type")
            if step.offset != cur.prefix_norm_sum(step.j) + step.j:
                raise CertificateError("planes step offset mismatch")
            offset += step.offset
            cur = step.output
            cur_j = 0
        elif isinstance(step, Extract):
            if cur_j != 0:
                raise CertificateError("extraction with pending planes")
            if not step.extracted.leq(cur):
                raise CertificateError("extraction exceeds available forms")
            want = prod(
                (k + 2) ** e for k, e in enumerate(step.extracted.entries) if e
            )
            if step.product != want:
                raise CertificateError("extraction product mismatch")
            if rdfn.rd(step.product) > level:
                raise CertificateError(
                    f"product {step.product} is not certified at level {level}"
                )
            if step.j_after != step.extracted.norm():
                raise CertificateError("extraction j mismatch")
            cur = cur.sub(step.extracted)
            cur_j = step.j_after
        elif isinstance(step, QuadricFastPath):
            if cur_j != 0 or cur.entries != (step.m2,):
                raise CertificateError("fast path state mismatch")
            if step.b < 1 or step.b > step.m2:
                raise CertificateError("fast path batch size out of range")
            if rdfn.rd(1 << step.b) > level:
                raise CertificateError("fast path batch is not certified")
            if divmod(step.m2, step.b) != (step.q, step.r_rem):
                raise CertificateError("fast path division mismatch")
            want = comb(step.q, 2) * step.b**2 + step.q * step.b * (step.r_rem + 1)
            want += step.r_rem
            if step.value != want:
                raise CertificateError("fast path value mismatch")
            value = offset + step.value
        elif isinstance(step, BaseCase):
            if cur:
                raise CertificateError("base case with forms remaining")
            if step.j != cur_j:
                raise CertificateError("base case j mismatch")
            value = offset + step.j
        else:
            raise CertificateError(f"unknown step {step!r}")
    if value is None:
        raise CertificateError("certificate has no terminal step")
    if value != cert.value:
        raise CertificateError(f"replayed value {value} != certified {cert.value}")
    return value


# -- JSON export --------------------------------------------------------------


def _step_to_json(step: Step) -> dict:
    if isinstance(step, Extract):
        return {
            "tag": "extract",
            "extracted": step.extracted.text(),
            "product": str(step.product),
            "j_after": str(step.j_after),
        }
    if isinstance(step, PlanesFromPts):
        return {
            "tag": "planes_from_pts",
            "j": str(step.j),
            "input": step.input.text(),
            "output": step.output.text(),
            "offset": str(step.offset),
        }
    if isinstance(step, QuadricFastPath):
        return {
            "tag": "quadric_fast_path",
            "m2": str(step.m2),
            "b": str(step.b),
            "q": str(step.q),
            "r_rem": str(step.r_rem),
            "value": str(step.value),
        }
    if isinstance(step, BaseCase):
        return {"tag": "base_case", "j": str(step.j)}
    if isinstance(step, CoarseLine):
        return {
            "tag": "coarse_line",
            "input": step.input.text(),
            "output": step.output.text(),
            "offset": str(step.offset),
        }
    raise TypeError(f"unknown step {step!r}")


def _step_from_json(doc: dict) -> Step:
    tag = doc["tag"]
    if tag == "extract":
        return Extract(TypeSeq.parse(doc["extracted"]), int(doc["product"]), int(doc["j_after"]))
    if tag == "planes_from_pts":
        return PlanesFromPts(
            int(doc["j"]),
            TypeSeq.parse(doc["input"]),
            TypeSeq.parse(doc["output"]),
            int(doc["offset"]),
        )
    if tag == "quadric_fast_path":
        return QuadricFastPath(
            int(doc["m2"]), int(doc["b"]), int(doc["q"]), int(doc["r_rem"]), int(doc["value"])
        )
    if tag == "base_case":
        return BaseCase(int(doc["j"]))
    if tag == "coarse_line":
        return CoarseLine(
            TypeSeq.parse(doc["input"]), TypeSeq.parse(doc["output"]), int(doc["offset"])
        )
    raise CertificateError(f"unknown step tag {tag!r}")


def cert_to_json(cert: BoundCertificate) -> dict:
    """Certificate as a JSON-ready dict; all big integers are decimal strings."""
    stats = cert.stats
    return {
        "header": {
            "level": str(cert.level),
            "j": str(cert.j),
            "type": cert.typeseq.text(),
            "value": str(cert.value),
            "strategy": cert.strategy,
            "table_id": cert.table_id,
        },
        "stats": {
            "extract_by_degree": {str(d): str(c) for d, c in sorted(stats.extract_by_degree.items())},
            "planes_by_degree": {str(d): str(c) for d, c in sorted(stats.planes_by_degree.items())},
            "total_steps": str(stats.total_steps),
            "largest_product": str(stats.largest_product),
            "steps_to_quadric": None
            if stats.steps_to_quadric is None
            else str(stats.steps_to_quadric),
        },
        "steps_elided": cert.steps_elided,
        "steps": [_step_to_json(s) for s in cert.steps],
    }


def cert_from_json(doc: dict) -> BoundCertificate:
    head = doc["header"]
    raw = doc["stats"]
    stats = EvalStats(
        extract_by_degree={int(d): int(c) for d, c in raw["extract_by_degree"].items()},
        planes_by_degree={int(d): int(c) for d, c in raw["planes_by_degree"].items()},
        total_steps=int(raw["total_steps"]),
        largest_product=int(raw["largest_product"]),
        steps_to_quadric=None
        if raw["steps_to_quadric"] is None
        else int(raw["steps_to_quadric"]),
    )
    return BoundCertificate(
        level=int(head["level"]),
        j=int(head["j"]),
        typeseq=TypeSeq.parse(head["type"]),
        value=int(head["value"]),
        steps=tuple(_step_from_json(s) for s in doc["steps"]),
        steps_elided=bool(doc["steps_elided"]),
        stats=stats,
        strategy=head["strategy"],
        table_id=head["table_id"],
    )
