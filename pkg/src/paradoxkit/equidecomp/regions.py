"""Subsets of the two ground-set backends.

``FiniteSet`` (backend ``"finite"``) wraps a frozenset; every operation is
exact.

``IntRegion`` (backend ``"integer"``) is a finite union of terms
``base & f1 & f2 & ...`` where ``base`` is an exact :class:`IntSet` and the
``f`` are decidable membership filters.  Filters appear only where a block
is carved out by a property that no finite union of progressions can
express (the ancestor-parity classes of the Schroeder-Bernstein combiner).
Without filters every operation is exact; with them membership stays
exact but emptiness, inclusion and equality are decided on the window
``[0, window)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator

from .intsets import IntSet
from .motions import Affine

DEFAULT_WINDOW = 2048


def order_key(x) -> tuple:
    """Deterministic total order for heterogeneous finite elements."""
    if isinstance(x, bool):
        return (3, repr(x))
    if isinstance(x, (int, Fraction)):
        return (0, x)
    if isinstance(x, tuple) and all(isinstance(y, (int, Fraction)) for y in x):
        return (1, x)
    if isinstance(x, str):
        return (2, x)
    return (3, repr(x))


@dataclass(frozen=True)
class FiniteSet:
    elements: frozenset = frozenset()

    backend = "finite"
    exact = True

    def __init__(self, elements: Iterable[Hashable] = ()):
        object.__setattr__(self, "elements", frozenset(elements))

    def __contains__(self, x) -> bool:
        return x in self.elements

    def __iter__(self) -> Iterator:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.elements)

    def sorted(self) -> list:
        return sorted(self.elements, key=order_key)

    def members(self, window: int | None = None) -> list:
        return self.sorted()

    def intersect(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self.elements & other.elements)

    def union(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self.elements | other.elements)

    def difference(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self.elements - other.elements)

    def image(self, motion) -> "FiniteSet":
        return FiniteSet(motion(x) for x in self.elements)

    def scaled(self, k) -> "FiniteSet":
        return FiniteSet(tuple(Fraction(k) * c for c in x) for x in self.elements)

    def find_member(self, window: int | None = None):
        return min(self.elements, key=order_key) if self.elements else None

    def provably_empty(self) -> bool:
        return not self.elements

    def to_json(self) -> list:
        return [_element_json(x) for x in self.sorted()]

    def __repr__(self) -> str:
        return "FiniteSet{" + ", ".join(map(str, self.sorted()[:8])) + (", ..." if len(self) > 8 else "") + "}"


def _element_json(x):
    if isinstance(x, tuple):
        return [_element_json(y) for y in x]
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x)
    return x


@dataclass(frozen=True)
class Filter:
    """Membership test ``predicate(pull(n)) != negated``.

    ``pull`` maps the current coordinates back to the ones the predicate
    was written for; pushing a filter forward through a motion ``m``
    composes ``pull`` with ``m^-1``.
    """

    name: str
    predicate: Callable[[Any], bool]
    pull: Affine = Affine()
    negated: bool = False

    def __call__(self, n) -> bool:
        return bool(self.predicate(self.pull(n))) != self.negated

    def pushed(self, motion: Affine) -> "Filter":
        return Filter(self.name, self.predicate, self.pull.compose(motion.inverse()), self.negated)

    def negate(self) -> "Filter":
        return Filter(self.name, self.predicate, self.pull, not self.negated)

    def describe(self) -> str:
        where = "" if self.pull.is_identity() else f" at ({self.pull})"
        return ("not " if self.negated else "") + self.name + where


Term = tuple  # (IntSet, tuple[Filter, ...])


def _contradictory(filters: tuple) -> bool:
    seen = {(f.name, id(f.predicate), f.pull): f.negated for f in filters}
    return any(seen.get((f.name, id(f.predicate), f.pull)) is not f.negated for f in filters)


class IntRegion:
    backend = "integer"

    def __init__(self, terms: Iterable[Term] = ()):
        plain = IntSet.empty()
        filtered: list[Term] = []
        for base, filters in terms:
            if base.is_empty():
                continue
            filters = tuple(dict.fromkeys(filters))
            if not filters:
                plain = plain | base
            elif not _contradictory(filters):
                filtered.append((base, filters))
        out: list[Term] = [(plain, ())] if not plain.is_empty() else []
        self.terms: tuple[Term, ...] = tuple(out + filtered)

    @classmethod
    def of(cls, s: IntSet) -> "IntRegion":
        return cls([(s, ())])

    @classmethod
    def naturals(cls) -> "IntRegion":
        return cls.of(IntSet.naturals())

    @property
    def exact(self) -> bool:
        return all(not f for _, f in self.terms)

    def as_intset(self) -> IntSet:
        if not self.exact:
            raise ValueError("region carries filters; no exact IntSet form")
        return self.terms[0][0] if self.terms else IntSet.empty()

    def base_union(self) -> IntSet:
        """Union of the term bases: an exact superset of the region."""
        out = IntSet.empty()
        for base, _ in self.terms:
            out = out | base
        return out

    def __contains__(self, n) -> bool:
        if isinstance(n, Fraction):
            if n.denominator != 1:
                return False
            n = int(n)
        return any(n in base and all(f(n) for f in filters) for base, filters in self.terms)

    def intersect(self, other: "IntRegion") -> "IntRegion":
        return IntRegion((b1 & b2, f1 + f2) for b1, f1 in self.terms for b2, f2 in other.terms)

    def union(self, other: "IntRegion") -> "IntRegion":
        return IntRegion(self.terms + other.terms)

    def complement(self) -> "IntRegion":
        # not(b & f1 & ... & fk) = (not b) | (b & not f1) | ... | (b & not fk)
        out = IntRegion.naturals()
        for base, filters in self.terms:
            parts = [(base.complement(), ())] + [(base, (f.negate(),)) for f in filters]
            out = out.intersect(IntRegion(parts))
        return out

    def difference(self, other: "IntRegion") -> "IntRegion":
        if other.exact:
            o = other.as_intset()
            return IntRegion((b - o, f) for b, f in self.terms)
        return self.intersect(other.complement())

    def image(self, motion: Affine) -> "IntRegion":
        return IntRegion((b.image(motion), tuple(f.pushed(motion) for f in fs)) for b, fs in self.terms)

    def members(self, window: int = DEFAULT_WINDOW) -> list[int]:
        found: set[int] = set()
        for base, filters in self.terms:
            found.update(n for n in base.members_below(window) if all(f(n) for f in filters))
        return sorted(found)

    def find_member(self, window: int = DEFAULT_WINDOW) -> int | None:
        """Smallest member: exact when filter-free, else searched in the window
        (finite bases are always searched completely)."""
        best = None
        for base, filters in self.terms:
            if not filters:
                m = base.min()
            else:
                limit = base.threshold if base.is_finite() else window
                m = next((n for n in base.members_below(limit) if all(f(n) for f in filters)), None)
            if m is not None and (best is None or m < best):
                best = m
        return best

    def provably_empty(self) -> bool:
        return all(base.is_finite() and not any(all(f(n) for f in fs) for n in base.head)
                   for base, fs in self.terms)

    def to_json(self) -> list:
        out = []
        for base, filters in self.terms:
            term: dict[str, Any] = {"progressions": base.to_json()}
            if filters:
                term["filters"] = [f.describe() for f in filters]
            out.append(term)
        return out

    def __repr__(self) -> str:
        parts = []
        for base, filters in self.terms:
            parts.append(repr(base) + "".join(f" & [{f.describe()}]" for f in filters))
        return "IntRegion(" + " | ".join(parts) + ")"


def as_region(x) -> FiniteSet | IntRegion:
    """Coerce user input: IntSet -> IntRegion, plain sets -> FiniteSet."""
    if isinstance(x, (FiniteSet, IntRegion)):
        return x
    if isinstance(x, IntSet):
        return IntRegion.of(x)
    if isinstance(x, (set, frozenset, list, tuple)):
        return FiniteSet(x)
    raise TypeError(f"cannot use {type(x).__name__} as a subset")
