"""Finite unions of arithmetic progressions in the non-negative integers.

Any such union is eventually periodic, so it is stored in the normal form
``(threshold T, period M, head, residues)``: ``head`` lists the members
below ``T`` and for ``n >= T`` membership depends only on ``n mod M``.
Both ``T`` and ``M`` are kept minimal, which makes the representation
canonical and ``==`` exact set equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from ..errors import EquidecompError


@dataclass(frozen=True)
class Progression:
    """``{start + k*step}``, stopping before ``end`` when one is given."""

    start: int
    step: int = 1
    end: int | None = None

    def __post_init__(self):
        if self.start < 0:
            raise ValueError(f"progression start must be >= 0, got {self.start}")
        if self.step < 1:
            raise ValueError(f"progression step must be >= 1, got {self.step}")
        if self.end is not None and self.end < self.start:
            raise ValueError(f"progression end {self.end} precedes start {self.start}")

    @property
    def finite(self) -> bool:
        return self.end is not None

    def to_json(self) -> dict:
        d = {"start": self.start, "step": self.step}
        if self.end is not None:
            d["end"] = self.end
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Progression":
        return cls(int(d["start"]), int(d.get("step", 1)), None if d.get("end") is None else int(d["end"]))


def _divisors(m: int) -> list[int]:
    small = [d for d in range(1, math.isqrt(m) + 1) if m % d == 0]
    return sorted(set(small + [m // d for d in small]))


@dataclass(frozen=True, init=False)
class IntSet:
    threshold: int
    period: int
    head: frozenset
    residues: frozenset

    def __init__(self, threshold: int = 0, period: int = 1, head: Iterable[int] = (), residues: Iterable[int] = ()):
        T, M = max(0, threshold), max(1, period)
        hd = {x for x in head if 0 <= x < T}
        res = {r % M for r in residues}

        for d in _divisors(M):
            if all((r + d) % M in res for r in res):
                res = {r % d for r in res}
                M = d
                break
        while T > 0 and ((T - 1) in hd) == (((T - 1) % M) in res):
            hd.discard(T - 1)
            T -= 1

        object.__setattr__(self, "threshold", T)
        object.__setattr__(self, "period", M)
        object.__setattr__(self, "head", frozenset(hd))
        object.__setattr__(self, "residues", frozenset(res))

    # -- constructors ----------------------------------------------------------

    @classmethod
    def empty(cls) -> "IntSet":
        return cls()

    @classmethod
    def naturals(cls) -> "IntSet":
        return cls(0, 1, (), (0,))

    @classmethod
    def of(cls, elements: Iterable[int]) -> "IntSet":
        els = [int(x) for x in elements]
        if any(x < 0 for x in els):
            raise ValueError("IntSet elements must be non-negative")
        return cls(max(els, default=-1) + 1, 1, els, ())

    @classmethod
    def progression(cls, start: int, step: int = 1, end: int | None = None) -> "IntSet":
        return cls.from_progressions([Progression(start, step, end)])

    @classmethod
    def from_progressions(cls, progs: Iterable[Progression]) -> "IntSet":
        progs = list(progs)
        infinite = [p for p in progs if not p.finite]
        T = max([p.end for p in progs if p.finite] + [p.start for p in infinite] + [0])
        M = math.lcm(*[p.step for p in infinite]) if infinite else 1
        head = set()
        for p in progs:
            stop = T if p.end is None else min(p.end, T)
            head.update(range(p.start, stop, p.step))
        res = {r for r in range(M) if any((r - p.start) % p.step == 0 for p in infinite)}
        return cls(T, M, head, res)

    # -- queries -----------------------------------------------------------------

    def __contains__(self, n) -> bool:
        if isinstance(n, Fraction):
            if n.denominator != 1:
                return False
            n = int(n)
        if not isinstance(n, int) or n < 0:
            return False
        if n < self.threshold:
            return n in self.head
        return n % self.period in self.residues

    def is_empty(self) -> bool:
        return not self.head and not self.residues

    def is_finite(self) -> bool:
        return not self.residues

    def __len__(self) -> int:
        if self.residues:
            raise TypeError("infinite IntSet has no len()")
        return len(self.head)

    def __iter__(self) -> Iterator[int]:
        yield from sorted(self.head)
        if not self.residues:
            return
        n = self.threshold
        while True:
            if n % self.period in self.residues:
                yield n
            n += 1

    def members_below(self, limit: int) -> list[int]:
        out = sorted(x for x in self.head if x < limit)
        if self.residues:
            out.extend(n for n in range(self.threshold, limit) if n % self.period in self.residues)
        return out

    def min(self) -> int | None:
        if self.head:
            return min(self.head)
        if self.residues:
            T, M = self.threshold, self.period
            return min(T + (r - T) % M for r in self.residues)
        return None

    # -- boolean algebra ------------------------------------------------------------

    def _lift(self, T: int, M: int) -> tuple[set, set]:
        head = set(self.head)
        head.update(n for n in range(self.threshold, T) if n % self.period in self.residues)
        res = {r for r in range(M) if r % self.period in self.residues}
        return head, res

    def _binary(self, other: "IntSet", op) -> "IntSet":
        T = max(self.threshold, other.threshold)
        M = math.lcm(self.period, other.period)
        h1, r1 = self._lift(T, M)
        h2, r2 = other._lift(T, M)
        return IntSet(T, M, op(h1, h2), op(r1, r2))

    def __or__(self, other: "IntSet") -> "IntSet":
        return self._binary(other, set.__or__)

    def __and__(self, other: "IntSet") -> "IntSet":
        return self._binary(other, set.__and__)

    def __sub__(self, other: "IntSet") -> "IntSet":
        return self._binary(other, set.__sub__)

    def __xor__(self, other: "IntSet") -> "IntSet":
        return self._binary(other, set.__xor__)

    def complement(self) -> "IntSet":
        return IntSet.naturals() - self

    def issubset(self, other: "IntSet") -> bool:
        return (self - other).is_empty()

    def isdisjoint(self, other: "IntSet") -> bool:
        return (self & other).is_empty()

    # -- affine images ------------------------------------------------------------

    def image(self, motion) -> "IntSet":
        """Image under ``n -> slope*n + offset``; every image must be a
        non-negative integer."""
        progs = []
        for h in sorted(self.head):
            y = _integral(motion, h)
            progs.append(Progression(y, 1, y + 1))
        T, M = self.threshold, self.period
        step = motion.slope * M
        for r in sorted(self.residues):
            n0 = T + (r - T) % M
            y0 = _integral(motion, n0)
            if step.denominator != 1:
                raise EquidecompError("NOT_INTEGRAL", f"{motion} sends {n0 + M}... off the integers", n0 + M)
            progs.append(Progression(y0, int(step)))
        return IntSet.from_progressions(progs)

    # -- export -------------------------------------------------------------------

    def progressions(self) -> list[Progression]:
        """Sorted, non-overlapping progressions whose union is this set."""
        out: list[Progression] = []
        run: list[int] = []
        for x in sorted(self.head):
            if len(run) >= 2 and x - run[-1] != run[1] - run[0]:
                out.append(_run_to_prog(run))
                run = []
            run.append(x)
        if run:
            out.append(_run_to_prog(run))
        T, M = self.threshold, self.period
        for n0 in sorted(T + (r - T) % M for r in self.residues):
            out.append(Progression(n0, M))
        return sorted(out, key=lambda p: p.start)

    def to_json(self) -> list[dict]:
        return [p.to_json() for p in self.progressions()]

    def __repr__(self) -> str:
        parts = []
        for p in self.progressions():
            if p.end is None:
                parts.append(f"{p.start}+{p.step}k")
            elif p.end - p.start <= p.step:
                parts.append(str(p.start))
            else:
                parts.append(f"{p.start}..{p.end}:{p.step}")
        return "IntSet{" + ", ".join(parts) + "}"


def _run_to_prog(run: list[int]) -> Progression:
    step = run[1] - run[0] if len(run) > 1 else 1
    return Progression(run[0], step, run[-1] + 1)


def _integral(motion, n: int) -> int:
    y = motion(n)
    if isinstance(y, Fraction):
        if y.denominator != 1:
            raise EquidecompError("NOT_INTEGRAL", f"{motion} sends {n} to {y}", n)
        y = int(y)
    if y < 0:
        raise EquidecompError("NEGATIVE_IMAGE", f"{motion} sends {n} to {y}", n)
    return y
