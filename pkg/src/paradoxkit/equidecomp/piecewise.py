"""Piecewise bijections: the witnesses of equidecomposability.

A :class:`PiecewiseMap` partitions its domain into blocks and moves each
block by one group element.  Construction validates that blocks are
disjoint, cover the domain, and have disjoint images.  Validation is
exact unless some block carries a membership filter, in which case it is
carried out on the window recorded in ``validated_on``.

Maps compare pointwise (see :func:`agree_on`), never by block structure:
composition and restriction refine blocks freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from ..errors import EquidecompError
from .motions import Affine, RigidMotion
from .regions import DEFAULT_WINDOW, FiniteSet, IntRegion, as_region, order_key


@dataclass(frozen=True)
class Piece:
    block: Any
    motion: Any

    def image(self):
        return self.block.image(self.motion)


def _union(regions, like):
    out = FiniteSet() if isinstance(like, FiniteSet) else IntRegion()
    for r in regions:
        out = out.union(r)
    return out


def _lowest(x, window):
    return x.find_member(window)


def _check_backend(domain, blocks):
    kinds = {type(domain)} | {type(b) for b in blocks}
    if len(kinds) > 1:
        raise EquidecompError("BACKEND_MISMATCH", f"mixed subset types {sorted(k.__name__ for k in kinds)}")


class PiecewiseMap:
    def __init__(self, domain, pieces: Iterable, *, window: int = DEFAULT_WINDOW, allow_empty_blocks: bool = False):
        self.domain = as_region(domain)
        self.pieces: tuple[Piece, ...] = tuple(
            p if isinstance(p, Piece) else Piece(as_region(p[0]), p[1]) for p in pieces
        )
        self.window = window
        _check_backend(self.domain, [p.block for p in self.pieces])
        self._validate(allow_empty_blocks)

    @property
    def backend(self) -> str:
        return self.domain.backend

    @property
    def exact(self) -> bool:
        return getattr(self.domain, "exact", True) and all(getattr(p.block, "exact", True) for p in self.pieces)

    @property
    def validated_on(self) -> str:
        return "exact" if self.exact else f"window [0, {self.window})"

    def __len__(self) -> int:
        return len(self.pieces)

    def _validate(self, allow_empty_blocks: bool) -> None:
        w = self.window
        blocks = [p.block for p in self.pieces]
        images = [p.image() for p in self.pieces]
        for i, b in enumerate(blocks):
            if not allow_empty_blocks and b.provably_empty():
                raise EquidecompError("EMPTY_BLOCK", f"block {i} is empty", i)
            stray = _lowest(b.difference(self.domain), w)
            if stray is not None:
                raise EquidecompError("BLOCK_OUTSIDE_DOMAIN", f"block {i} contains {stray!r} outside the domain", stray)
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                x = _lowest(blocks[i].intersect(blocks[j]), w)
                if x is not None:
                    raise EquidecompError("OVERLAPPING_BLOCKS", f"blocks {i} and {j} share {x!r}", x)
                y = _lowest(images[i].intersect(images[j]), w)
                if y is not None:
                    raise EquidecompError("OVERLAPPING_IMAGES", f"images of blocks {i} and {j} share {y!r}", y)
        missing = _lowest(self.domain.difference(_union(blocks, self.domain)), w)
        if missing is not None:
            raise EquidecompError("UNCOVERED_DOMAIN", f"{missing!r} lies in no block", missing)

    def piece_for(self, x) -> Piece | None:
        for p in self.pieces:
            if x in p.block:
                return p
        return None

    def __call__(self, x):
        p = self.piece_for(x)
        if p is None:
            raise EquidecompError("OUTSIDE_DOMAIN", f"{x!r} is not in the domain", x)
        return p.motion(x)

    def image(self):
        return _union([p.image() for p in self.pieces], self.domain)

    def to_json(self) -> dict:
        return {
            "backend": self.backend,
            "domain": self.domain.to_json(),
            "pieces": [{"block": p.block.to_json(), "map": p.motion.to_json()} for p in self.pieces],
        }

    def __repr__(self) -> str:
        return f"PiecewiseMap({self.backend}, {len(self.pieces)} pieces)"


def make_piecewise(domain, pieces, *, window: int = DEFAULT_WINDOW) -> PiecewiseMap:
    return PiecewiseMap(domain, pieces, window=window)


def identity_map(domain, motion=None) -> PiecewiseMap:
    domain = as_region(domain)
    if motion is None:
        motion = Affine() if isinstance(domain, IntRegion) else _finite_identity(domain)
    return PiecewiseMap(domain, [Piece(domain, motion)] if not domain.provably_empty() else [])


def _finite_identity(domain: FiniteSet):
    from .motions import Permutation

    els = domain.sorted()
    if els and isinstance(els[0], tuple) and len(els[0]) == 3:
        return RigidMotion()
    if els and isinstance(els[0], (int, Fraction)):
        return Affine()
    return Permutation()


def same_set(x, y, window: int = DEFAULT_WINDOW) -> Any:
    """``None`` when ``x == y`` (on the window if inexact), else a witness."""
    a = _lowest(x.difference(y), window)
    if a is not None:
        return a
    return _lowest(y.difference(x), window)


def _nonempty(region, window) -> bool:
    if region.provably_empty():
        return False
    if getattr(region, "exact", True):
        return True
    # filtered and undecided: keep the block, it costs nothing if empty
    return True


def invert_piecewise(pm: PiecewiseMap) -> PiecewiseMap:
    pieces = [Piece(p.image(), p.motion.inverse()) for p in pm.pieces]
    return PiecewiseMap(pm.image(), pieces, window=pm.window, allow_empty_blocks=True)


def compose_piecewise(pm1: PiecewiseMap, pm2: PiecewiseMap) -> PiecewiseMap:
    """``pm2 o pm1`` on the blocks ``A_i & pm1^-1(B_j)``."""
    w = max(pm1.window, pm2.window)
    bad = same_set(pm1.image(), pm2.domain, w)
    if bad is not None:
        raise EquidecompError("DOMAIN_MISMATCH", f"image of the first map and domain of the second differ at {bad!r}", bad)
    pieces = []
    for p in pm1.pieces:
        moved = p.image()
        for q in pm2.pieces:
            common = moved.intersect(q.block)
            if not _nonempty(common, w):
                continue
            pieces.append(Piece(common.image(p.motion.inverse()), q.motion.compose(p.motion)))
    return PiecewiseMap(pm1.domain, pieces, window=w, allow_empty_blocks=True)


def restrict_piecewise(pm: PiecewiseMap, subset) -> PiecewiseMap:
    subset = as_region(subset)
    _check_backend(pm.domain, [subset])
    stray = _lowest(subset.difference(pm.domain), pm.window)
    if stray is not None:
        raise EquidecompError("NOT_SUBSET", f"{stray!r} is outside the domain", stray)
    pieces = []
    for p in pm.pieces:
        block = p.block.intersect(subset)
        if _nonempty(block, pm.window):
            pieces.append(Piece(block, p.motion))
    return PiecewiseMap(subset, pieces, window=pm.window, allow_empty_blocks=True)


def scale_conjugate(pm: PiecewiseMap, k) -> PiecewiseMap:
    """Conjugate by ``x -> k x``: the new map satisfies ``pm'(k x) = k pm(x)``."""
    k = Fraction(k)
    if k <= 0:
        raise EquidecompError("BAD_SCALE", f"scale factor must be positive, got {k}", k)
    if not isinstance(pm.domain, FiniteSet):
        raise EquidecompError("BACKEND_MISMATCH", "scaling needs a point-set backend")
    if not all(isinstance(p.motion, RigidMotion) for p in pm.pieces):
        raise EquidecompError("BACKEND_MISMATCH", "scaling needs rigid motions on rational points")
    pieces = [Piece(p.block.scaled(k), p.motion.scaled(k)) for p in pm.pieces]
    return PiecewiseMap(pm.domain.scaled(k), pieces, window=pm.window)


def agree_on(pm1, pm2, points) -> Any:
    """``None`` if both maps agree at every point, else the first disagreement."""
    for x in points:
        if pm1(x) != pm2(x):
            return x
    return None


# -- paradoxical sets -------------------------------------------------------------


@dataclass
class ParadoxWitness:
    """Two piecewise maps from ``set`` onto subsets of ``set``."""

    set: Any
    map1: PiecewiseMap
    map2: PiecewiseMap

    def __post_init__(self):
        self.set = as_region(self.set)
        w = max(self.map1.window, self.map2.window)
        for name, m in (("map1", self.map1), ("map2", self.map2)):
            bad = same_set(m.domain, self.set, w)
            if bad is not None:
                raise EquidecompError("DOMAIN_MISMATCH", f"{name} is not defined on exactly the set (at {bad!r})", bad)
            stray = _lowest(m.image().difference(self.set), w)
            if stray is not None:
                raise EquidecompError("NOT_SUBSET", f"{name} leaves the set at {stray!r}", stray)


@dataclass
class ParadoxCheck:
    relaxed: bool
    strict: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.relaxed


def check_paradoxical(w: ParadoxWitness) -> ParadoxCheck:
    """Relaxed form: the two images are disjoint subsets of the set.
    Strict form: additionally they cover it."""
    win = max(w.map1.window, w.map2.window)
    i1, i2 = w.map1.image(), w.map2.image()
    clash = _lowest(i1.intersect(i2), win)
    if clash is not None:
        return ParadoxCheck(False, False, clash)
    gap = _lowest(w.set.difference(i1.union(i2)), win)
    return ParadoxCheck(True, gap is None, gap)


def transfer_paradox(pm_ab: PiecewiseMap, w: ParadoxWitness) -> ParadoxWitness:
    """Pull a paradoxical decomposition of B back along ``pm_ab: A -> B``.

    With ``B_i`` the image of ``w.map_i``, the piece ``A_i`` is
    ``pm_ab^-1(B_i)`` and ``A -> A_i`` is ``pm_ab^-1 o map_i o pm_ab``.
    """
    back = invert_piecewise(pm_ab)
    maps = []
    for m in (w.map1, w.map2):
        there = compose_piecewise(pm_ab, m)
        maps.append(compose_piecewise(there, restrict_piecewise(back, m.image())))
    return ParadoxWitness(pm_ab.domain, maps[0], maps[1])


def sorted_members(region, window: int = DEFAULT_WINDOW) -> list:
    if isinstance(region, FiniteSet):
        return region.sorted()
    return region.members(window)


__all__ = [
    "Piece", "PiecewiseMap", "make_piecewise", "identity_map", "invert_piecewise",
    "compose_piecewise", "restrict_piecewise", "scale_conjugate", "agree_on",
    "ParadoxWitness", "ParadoxCheck", "check_paradoxical", "transfer_paradox",
    "same_set", "sorted_members", "order_key",
]
