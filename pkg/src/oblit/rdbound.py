"""Hamilton tables and the derived bound on resolvent degree.

A Hamilton table maps r to H(r), the least polynomial degree from which r
coefficients can be eliminated.  Any strictly increasing table with
contiguous keys 1..r_max induces an upper bound R(n) on resolvent degree:
R(n) = n - r on the block H(r) <= n < H(r+1), R(n) = n below H(1), and
R(n) = n - r_max from H(r_max) on.
"""
from __future__ import annotations

import hashlib
from bisect import bisect_right
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator, Optional


class MonotonicityError(ValueError):
    """An update would break the strict increase of H against a neighbor."""


class TableFormatError(ValueError):
    """A table file or pair list could not be interpreted."""


@dataclass(frozen=True)
class HamiltonTable:
    """Immutable map r -> H(r) with per-entry provenance labels.

    ``rows`` is sorted by r.  Construction does not force validity; run
    :func:`validate` (or build a :class:`RdBoundFn`, which insists on a
    clean table) before trusting lookups.
    """

    rows: tuple[tuple[int, int], ...]
    provenance: tuple[str, ...]

    @classmethod
    def from_pairs(
        cls, pairs: Iterable[tuple[int, int]], provenance: str = "user"
    ) -> "HamiltonTable":
        rows = sorted(pairs)
        seen = set()
        for r, h in rows:
            if r < 1 or h < 1:
                raise TableFormatError(f"bad table row r={r}, H={h}")
            if r in seen:
                raise TableFormatError(f"duplicate entry for r={r}")
            seen.add(r)
        return cls(tuple(rows), tuple(provenance for _ in rows))

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.rows)

    @property
    def r_max(self) -> int:
        return self.rows[-1][0]

    def _find(self, r: int) -> Optional[int]:
        # contiguous keys are the common case; fall back to a scan so that
        # not-yet-validated tables with gaps still answer correctly
        if r - 1 < len(self.rows) and self.rows[r - 1][0] == r:
            return r - 1
        for i, (key, _) in enumerate(self.rows):
            if key == r:
                return i
        return None

    def has(self, r: int) -> bool:
        return self._find(r) is not None

    def entry(self, r: int) -> int:
        """H(r), or KeyError when r is outside the table."""
        i = self._find(r)
        if i is None:
            raise KeyError(f"no table entry for r={r}")
        return self.rows[i][1]

    def fingerprint(self) -> str:
        """Short stable hash of all rows; guards caches against table mixing."""
        payload = "\n".join(f"{r}:{h}" for r, h in self.rows)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def update(self, r: int, bound: int) -> "HamiltonTable":
        """Return a table with min(existing, bound) at r, provenance "computed".

        Rejects updates that would break strict monotonicity, naming the
        offending neighbor.  Inserting a brand-new r is only allowed at
        r_max + 1 so keys stay contiguous.
        """
        if r < 1 or bound < 1:
            raise ValueError(f"bad update r={r}, bound={bound}")
        i = self._find(r)
        if i is not None:
            if bound >= self.rows[i][1]:
                return self
            new_h = bound
        elif r == self.r_max + 1:
            new_h = bound
        else:
            raise MonotonicityError(f"inserting r={r} would leave a key gap")
        if r > 1 and self.has(r - 1) and self.entry(r - 1) >= new_h:
            raise MonotonicityError(
                f"H({r})={new_h} would not exceed neighbor H({r - 1})={self.entry(r - 1)}"
            )
        if self.has(r + 1) and new_h >= self.entry(r + 1):
            raise MonotonicityError(
                f"H({r})={new_h} would not stay below neighbor H({r + 1})={self.entry(r + 1)}"
            )
        rows = list(self.rows)
        prov = list(self.provenance)
        if i is not None:
            rows[i] = (r, new_h)
            prov[i] = "computed"
        else:
            rows.append((r, new_h))
            prov.append("computed")
        return HamiltonTable(tuple(rows), tuple(prov))


def validate(table: HamiltonTable) -> list[str]:
    """Structural check: returns a list of violations (empty means ok).

    Reports gaps in 1..r_max, every adjacent pair failing strict increase,
    and a missing classical prefix H(1)=2, H(2)=3, H(3)=4.
    """
    problems: list[str] = []
    rows = table.rows
    if not rows:
        return ["table is empty"]
    expected = 1
    for r, _ in rows:
        if r != expected:
            problems.append(f"gap at r={expected}")
            expected = r
        expected += 1
    for (r1, h1), (r2, h2) in zip(rows, rows[1:]):
        if h1 >= h2:
            problems.append(f"not strictly increasing at r={r2}: H({r1})={h1} >= H({r2})={h2}")
    classical = {1: 2, 2: 3, 3: 4}
    for r, want in classical.items():
        if not table.has(r):
            continue  # already reported as a gap
        if table.entry(r) != want:
            problems.append(f"classical entry H({r}) must be {want}, got {table.entry(r)}")
    for r in classical:
        if not any(row[0] == r for row in rows):
            problems.append(f"missing classical entry H({r})")
    return problems


# -- builtin tables ------------------------------------------------------

_FILL_BRANCHES = ((8, 11, 4), (12, 19, 5), (21, 33, 6), (35, 43, 7), (45, 55, 8))

_H34 = 2475934708812781843231486891102123
_H44 = 8559276927975810009082900078329761155025671771554

_EXPLICIT_NEW = {
    1: 2,
    2: 3,
    3: 4,
    4: 5,
    5: 9,
    6: 21,
    7: 75,
    20: 227214539745187,
    34: _H34,
    44: _H44,
}

_EXPLICIT_PRIOR = {
    1: 2,
    2: 3,
    3: 4,
    4: 5,
    5: 9,
    6: 21,
    7: 109,
    8: 325,
    11: factorial(10) // factorial(4) + 1,
    12: factorial(11) // factorial(4) + 1,
    13: 5250198,
    20: factorial(19) // factorial(5) + 1,
    21: factorial(20) // factorial(5) + 1,
    22: 381918437071508900,
    34: _H34,
    44: _H44,
}


def builtin_table(kind: str) -> HamiltonTable:
    """The two builtin Hamilton tables.

    kind="new" is the current best table; kind="prior" is the previously
    best available one (the baseline every sharpening run starts from).
    Gaps between explicit entries are closed by the factorial fill
    H(r) = (r-1)!/d! + 1 with d chosen per block of r.
    """
    if kind == "new":
        explicit, label = _EXPLICIT_NEW, "builtin-new"
    elif kind == "prior":
        explicit, label = _EXPLICIT_PRIOR, "builtin-prior"
    else:
        raise ValueError(f"unknown builtin table kind {kind!r}")
    rows = []
    prov = []
    for r in range(1, 56):
        if r in explicit:
            rows.append((r, explicit[r]))
            prov.append(label)
            continue
        for lo, hi, d in _FILL_BRANCHES:
            if lo <= r <= hi:
                rows.append((r, factorial(r - 1) // factorial(d) + 1))
                prov.append("factorial-fill")
                break
        else:
            raise AssertionError(f"no fill branch covers r={r}")
    table = HamiltonTable(tuple(rows), tuple(prov))
    assert not validate(table)
    return table


# -- file format ---------------------------------------------------------


def load_table(path: str) -> HamiltonTable:
    """Read "r<TAB>H(r)" records, one per line; '#' starts a comment."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise TableFormatError(f"{path}:{lineno}: expected 'r<TAB>H(r)'")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise TableFormatError(f"{path}:{lineno}: non-integer field") from exc
    return HamiltonTable.from_pairs(pairs)


def save_table(table: HamiltonTable, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for (r, h), label in zip(table.rows, table.provenance):
            fh.write(f"{r}\t{h}\t# {label}\n")


# -- the derived bound on resolvent degree --------------------------------


class RdBoundFn:
    """R(n), the upper bound on resolvent degree induced by a Hamilton table.

    Lookups are binary searches, so n of any size is fine.  The instance
    precomputes the block thresholds once; it is immutable after that and
    safe to share.
    """

    def __init__(self, table: HamiltonTable):
        problems = validate(table)
        if problems:
            raise TableFormatError("invalid Hamilton table: " + "; ".join(problems))
        self.table = table
        self._values = [h for _, h in table.rows]
        # H(r) - r is nondecreasing when H is strictly increasing; used to
        # find the admissibility ceiling for a level in O(log r_max).
        self._gaps = [h - r for r, h in table.rows]
        self.r_max = table.r_max

    def rd(self, n: int) -> int:
        """The bound R(n); requires n >= 1."""
        if n < 1:
            raise ValueError("n must be >= 1")
        values = self._values
        if n < values[0]:
            return n
        if n >= values[-1]:
            return n - self.r_max
        # number of r with H(r) <= n
        return n - bisect_right(values, n)

    def max_value_at_level(self, level: int) -> int:
        """Largest v with rd(v) <= level (rd is weakly increasing).

        Every degree product a run may certify at this level is <= this
        ceiling, which turns each certification check into one comparison.
        """
        if level < 1:
            raise ValueError("level must be >= 1")
        if level + self.r_max >= self._values[-1]:
            return level + self.r_max
        # largest r with H(r) - r <= level
        r = bisect_right(self._gaps, level)
        return level + r
