"""Cycles of rational curves and cusp duality.

A cycle is recorded by the negated self-intersections ``(b_1, ..., b_n)``, all
at least 2, up to rotation and reflection.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class NotACycleOfRationalCurves(ValueError):
    pass


class NotHyperbolic(ValueError):
    """All entries equal 2: the simple-elliptic boundary case, which has no dual cusp."""


def canonical_form(entries: Iterable[int]) -> tuple[int, ...]:
    seq = tuple(entries)
    n = len(seq)
    candidates = []
    for word in (seq, seq[::-1]):
        candidates.extend(word[k:] + word[:k] for k in range(n))
    return min(candidates)


@dataclass(frozen=True)
class CycleSeq:
    entries: tuple[int, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise NotACycleOfRationalCurves("a cycle needs at least one curve")
        for b in entries:
            if isinstance(b, bool) or not isinstance(b, int) or b < 2:
                raise NotACycleOfRationalCurves(f"entries must be integers >= 2, got {entries}")
        object.__setattr__(self, "entries", canonical_form(entries))

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"

    @property
    def is_hyperbolic(self) -> bool:
        return any(b >= 3 for b in self.entries)


def triangle_cycle(p: int, q: int, r: int) -> CycleSeq:
    """Resolution cycle of the cusp dual to T_{p,q,r}: self-intersections 1-p, 1-q, 1-r."""
    return CycleSeq((p - 1, q - 1, r - 1))


def blocks(c: CycleSeq) -> list[tuple[int, int]]:
    """Split into blocks ``(k+3, 2^l)``; returns the ``(k, l)`` pairs in cyclic order."""
    if not c.is_hyperbolic:
        raise NotHyperbolic(f"{c} has all entries 2 (simple elliptic, not a cusp)")
    e = c.entries
    start = next(i for i, b in enumerate(e) if b >= 3)
    word = e[start:] + e[:start]
    out = []
    for b in word:
        if b >= 3:
            out.append([b - 3, 0])
        else:
            out[-1][1] += 1
    return [tuple(kl) for kl in out]


def from_blocks(bl: Iterable[tuple[int, int]]) -> CycleSeq:
    entries: list[int] = []
    for k, l in bl:
        entries.append(k + 3)
        entries.extend([2] * l)
    return CycleSeq(tuple(entries))


def dual_cycle(c: CycleSeq) -> CycleSeq:
    """Dual cusp cycle: each block ``(k+3, 2^l)`` becomes ``(l+3, 2^k)``, order reversed."""
    return from_blocks([(l, k) for k, l in reversed(blocks(c))])


def charge(c: CycleSeq) -> int:
    return sum(b - 3 for b in c.entries) + len(c)
