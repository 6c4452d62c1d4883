"""Constructive Banach-Schroeder-Bernstein combiner.

Given injections ``f: A -> B`` and ``g: B -> A`` (as piecewise maps), every
``a in A`` has a backward chain ``a, g^-1(a), f^-1(g^-1(a)), ...`` that
either stops, or revisits a state.  Its length sorts ``A`` into the
classes ``even``, ``odd`` and ``infinite``; the combined bijection is
``f`` off the odd class and ``g^-1`` on it.

On the finite backend the classes are computed exactly.  On the integer
backend the odd class is a membership filter evaluated by walking the
chain; every forward piece must satisfy ``m(n) >= n`` on its block, so
backward steps never increase and chains end or cycle after finitely
many steps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from ..errors import EquidecompError
from .motions import Affine
from .piecewise import Piece, PiecewiseMap, same_set
from .regions import DEFAULT_WINDOW, FiniteSet, Filter, IntRegion, as_region

MAX_CHAIN = 1_000_000


class Parity(str, Enum):
    EVEN = "even"
    ODD = "odd"
    INFINITE = "infinite"


def _check_monotone(pm: PiecewiseMap, name: str) -> None:
    for i, p in enumerate(pm.pieces):
        m = p.motion
        if not isinstance(m, Affine):
            continue
        lo = p.block.base_union().min()
        if lo is None:
            continue
        if m.slope < 1 or m(lo) < lo:
            raise EquidecompError(
                "NONTERMINATING_ANCESTRY",
                f"piece {i} of {name} ({m}) moves {lo} downward; backward chains could run forever",
                lo,
            )


class _Preimage:
    """Backward step through one piecewise map."""

    def __init__(self, pm: PiecewiseMap):
        self.parts = [(p.image(), p.motion.inverse()) for p in pm.pieces]

    def __call__(self, y):
        for img, inv in self.parts:
            if y in img:
                return inv(y)
        return None


@dataclass
class Ancestry:
    """Memoized chain walker.  States are ``("A", x)`` or ``("B", y)``."""

    f: PiecewiseMap
    g: PiecewiseMap
    memo: dict = field(default_factory=dict)

    def __post_init__(self):
        self._back = {"A": _Preimage(self.g), "B": _Preimage(self.f)}

    def chain(self, x, side: str = "A", limit: int = 64) -> list:
        out = [(side, x)]
        while len(out) < limit:
            prev = self._back[side](x)
            if prev is None:
                break
            side = "B" if side == "A" else "A"
            x = prev
            out.append((side, x))
        return out

    def parity(self, x, side: str = "A") -> Parity:
        path: list = []
        index: dict = {}
        state = (side, x)
        tail: Parity | None = None
        while True:
            if state in self.memo:
                tail = self.memo[state]
                break
            if state in index:
                tail = Parity.INFINITE
                for s in path[index[state]:]:
                    self.memo[s] = Parity.INFINITE
                path = path[: index[state]]
                break
            if len(path) >= MAX_CHAIN:
                raise EquidecompError("NONTERMINATING_ANCESTRY", f"chain from {x!r} exceeds {MAX_CHAIN} steps", x)
            index[state] = len(path)
            path.append(state)
            s, v = state
            prev = self._back[s](v)
            if prev is None:
                tail = None
                break
            state = ("B" if s == "A" else "A", prev)
        # walk back assigning parities: a state with no ancestor is even
        cur = tail
        for s in reversed(path):
            if cur is None:
                cur = Parity.EVEN
            elif cur is not Parity.INFINITE:
                cur = Parity.ODD if cur is Parity.EVEN else Parity.EVEN
            self.memo[s] = cur
        return self.memo[(side, x)]

    def is_odd(self, x) -> bool:
        return self.parity(x, "A") is Parity.ODD


def classify(ancestry: Ancestry, elements) -> dict[Parity, list]:
    out: dict[Parity, list] = {p: [] for p in Parity}
    for x in elements:
        out[ancestry.parity(x)].append(x)
    return out


def _check_shapes(f: PiecewiseMap, g: PiecewiseMap, window: int) -> None:
    if f.backend != g.backend:
        raise EquidecompError("BACKEND_MISMATCH", f"f is {f.backend}, g is {g.backend}")
    stray = g.image().difference(f.domain).find_member(window)
    if stray is not None:
        raise EquidecompError("NOT_SUBSET", f"g sends a point to {stray!r} outside the domain of f", stray)


def bsb_combine(f: PiecewiseMap, g: PiecewiseMap, B=None, window: int = DEFAULT_WINDOW) -> PiecewiseMap:
    """Bijection ``A -> B`` from injections ``f: A -> B`` and ``g: B -> A``."""
    _check_shapes(f, g, window)
    if B is not None:
        bad = same_set(g.domain, as_region(B), window)
        if bad is not None:
            raise EquidecompError("DOMAIN_MISMATCH", f"g is not defined on B (at {bad!r})", bad)
    stray = f.image().difference(g.domain).find_member(window)
    if stray is not None:
        raise EquidecompError("NOT_SUBSET", f"f sends a point to {stray!r} outside the domain of g", stray)
    anc = Ancestry(f, g)

    if f.backend == "finite":
        odd = FiniteSet(x for x in f.domain if anc.is_odd(x))
        keep = f.domain.difference(odd)
        pieces = []
        for p in f.pieces:
            block = p.block.intersect(keep)
            if not block.provably_empty():
                pieces.append(Piece(block, p.motion))
        for q in g.pieces:
            block = q.image().intersect(odd)
            if not block.provably_empty():
                pieces.append(Piece(block, q.motion.inverse()))
        return PiecewiseMap(f.domain, pieces, window=window)

    _check_monotone(f, "f")
    _check_monotone(g, "g")
    odd = Filter("A_odd", anc.is_odd)
    pieces = []
    for p in f.pieces:
        block = p.block.intersect(IntRegion([(f.domain.base_union(), (odd.negate(),))]))
        if not block.provably_empty():
            pieces.append(Piece(block, p.motion))
    for q in g.pieces:
        block = q.image().intersect(IntRegion([(f.domain.base_union(), (odd,))]))
        if not block.provably_empty():
            pieces.append(Piece(block, q.motion.inverse()))
    return PiecewiseMap(f.domain, pieces, window=window, allow_empty_blocks=True)


@dataclass
class BijectionReport:
    passed: bool
    checked: int
    reason: str = ""
    witness: object = None

    def summary(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        return f"{head}: {self.checked} elements checked" + (f"; {self.reason}" if self.reason else "")


def verify_bijection(h: PiecewiseMap, A, B, window: int = 1001) -> BijectionReport:
    """Injective on ``A`` and onto ``B``.

    Finite sets are checked exhaustively.  Integer sets are checked on the
    members below ``window`` and, at the level of progressions, by
    comparing the exact bases of the image with ``B``.
    """
    A, B = as_region(A), as_region(B)
    bad = same_set(h.domain, A, window)
    if bad is not None:
        return BijectionReport(False, 0, f"domain differs from A at {bad!r}", bad)
    xs = A.members(window)
    seen: dict = {}
    for x in xs:
        y = h(x)
        if y not in B:
            return BijectionReport(False, len(seen), f"h({x!r}) = {y!r} lies outside B", x)
        if y in seen:
            return BijectionReport(False, len(seen), f"h({seen[y]!r}) = h({x!r}) = {y!r}", x)
        seen[y] = x
    back = _Preimage(h)
    for y in B.members(window):
        x = back(y)
        if x is None or x not in A or h(x) != y:
            return BijectionReport(False, len(xs), f"{y!r} has no preimage", y)
    if isinstance(B, IntRegion):
        img = h.image().base_union()
        target = B.base_union()
        if not img.issubset(target):
            w = (img - target).min()
            return BijectionReport(False, len(xs), f"image progressions leave B at {w}", w)
        if not target.issubset(img):
            w = (target - img).min()
            return BijectionReport(False, len(xs), f"image progressions miss {w}", w)
    return BijectionReport(True, len(xs))


__all__ = ["Parity", "Ancestry", "classify", "bsb_combine", "verify_bijection", "BijectionReport"]
