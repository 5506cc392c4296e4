"""Exact arithmetic on hypersurface type sequences.

A type sequence records how many forms of each degree cut out an
intersection of hypersurfaces: entry ``m_i`` (indexing starts at degree 2)
counts the degree-``i`` forms.  Everything here is exact big-integer
arithmetic; iterated polar passes blow entries far past machine-word
range, so no fixed-width shortcuts are allowed anywhere downstream.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import accumulate
from math import comb
from typing import Iterable, Iterator, Optional


@dataclass(frozen=True, init=False)
class TypeSeq:
    """Finite-support sequence ``(m2, m3, ..., mn)`` in canonical form.

    Canonical form has no trailing zeros; the empty sequence is the unique
    zero type.  Instances are immutable and hashable, so they can be used
    as memo keys and shared freely across threads.
    """

    entries: tuple[int, ...]

    def __init__(self, entries: Iterable[int] = ()):
        es = list(entries)
        for e in es:
            if not isinstance(e, int) or isinstance(e, bool):
                raise TypeError(f"type entries must be integers, got {e!r}")
            if e < 0:
                raise ValueError(f"type entries must be nonnegative, got {e!r}")
        while es and es[-1] == 0:
            es.pop()
        object.__setattr__(self, "entries", tuple(es))

    # -- basic structure ------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.entries)

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, degree: int) -> int:
        """Multiplicity of forms of the given degree (0 above the support)."""
        if degree < 2:
            raise ValueError(f"forms have degree >= 2, got {degree}")
        idx = degree - 2
        if idx >= len(self.entries):
            return 0
        return self.entries[idx]

    @property
    def top_degree(self) -> Optional[int]:
        """Largest degree with a nonzero entry, or None for the zero type."""
        if not self.entries:
            return None
        return len(self.entries) + 1

    # -- parsing / formatting -------------------------------------------

    @classmethod
    def parse(cls, text: str) -> "TypeSeq":
        """Parse the textual form ``"m2,m3,...,mn"``; "" is the zero type."""
        text = text.strip()
        if not text:
            return cls()
        try:
            return cls(int(part) for part in text.split(","))
        except ValueError as exc:
            raise ValueError(f"malformed type string {text!r}") from exc

    def text(self) -> str:
        return ",".join(str(e) for e in self.entries)

    def __str__(self) -> str:
        return "(" + ",".join(str(e) for e in self.entries) + ")"

    # -- pointwise algebra ----------------------------------------------

    def leq(self, other: "TypeSeq") -> bool:
        """Entrywise partial order: every entry of self <= entry of other."""
        if len(self.entries) > len(other.entries):
            return False
        return all(a <= b for a, b in zip(self.entries, other.entries))

    def add(self, other: "TypeSeq") -> "TypeSeq":
        a, b = self.entries, other.entries
        if len(a) < len(b):
            a, b = b, a
        return TypeSeq(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    def sub(self, other: "TypeSeq") -> "TypeSeq":
        """Entrywise difference; requires other <= self."""
        if not other.leq(self):
            raise ValueError(f"cannot subtract {other} from {self}: entry would go negative")
        a, b = self.entries, other.entries
        return TypeSeq(tuple(x - y for x, y in zip(a, b)) + a[len(b):])

    # -- norms and the polar endomorphism --------------------------------

    def norm(self) -> int:
        """Total number of forms (the l1 norm)."""
        return sum(self.entries)

    def endo_once(self) -> "TypeSeq":
        """One polar pass: entry d becomes the tail sum m_d + ... + m_n."""
        if not self.entries:
            return self
        return TypeSeq(tuple(accumulate(reversed(self.entries)))[::-1])

    def endo(self, j: int) -> "TypeSeq":
        """The j-fold polar pass, evaluated in closed form.

        Entry at degree d is ``sum_i C(j+i-d-1, i-d) * m_i``; this matches
        j applications of :meth:`endo_once` but stays cheap when j is
        astronomically large.
        """
        if j < 0:
            raise ValueError("j must be a nonnegative integer")
        if j == 0 or not self.entries:
            return self
        return TypeSeq(_endo_raw(self.entries, j))

    def norm_of_endo(self, j: int) -> int:
        """``|self^j|`` without materializing the image sequence."""
        if j < 0:
            raise ValueError("j must be a nonnegative integer")
        return sum(comb(j + k, k) * m for k, m in enumerate(self.entries))

    def prefix_norm_sum(self, j: int) -> int:
        """``sum_{r=0}^{j-1} |self^r|`` in closed form (no loop over r)."""
        if j < 0:
            raise ValueError("j must be a nonnegative integer")
        return _pns_raw(self.entries, j)


ZERO = TypeSeq()


def _endo_raw(m: tuple[int, ...], j: int) -> tuple[int, ...]:
    """Closed-form polar pass on a raw canonical entry tuple, j >= 1.

    The top entry is fixed by the pass, so canonical form is preserved.
    """
    n1 = len(m)
    return tuple(
        sum(comb(j + k - t - 1, k - t) * m[k] for k in range(t, n1) if m[k])
        for t in range(n1)
    )


def _pns_raw(m: tuple[int, ...], j: int) -> int:
    # comb(j + k, k + 1) vanishes at j = 0, giving the empty sum.
    return sum(comb(j + k, k + 1) * m[k] for k in range(len(m)) if m[k])
