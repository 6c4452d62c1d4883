"""Exact orbit demonstrations on the sphere and in the ball.

Sphere points are :class:`~paradoxkit.rotations.ScaledVec` values with unit
norm over the hypotenuse base; points elsewhere (the ball, offset orbits)
are tuples of :class:`~fractions.Fraction`.  Nothing here touches floating
point.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import linalg
from .errors import OrbitError
from .rotations import PYTHAGOREAN_345, PythagoreanTriple, ScaledVec, apply_word
from .words import CosetLabel, Letter, Word, enumerate_reduced, leading_coset

SpherePoint = ScaledVec


def sphere_point(components: Sequence, base: int) -> ScaledVec:
    p = ScaledVec.from_rational(components, base)
    if not p.is_unit():
        raise OrbitError("NOT_ON_SPHERE", f"{components} does not have unit norm", tuple(components))
    return p


@dataclass(frozen=True)
class BallPoint:
    """The point ``t * u`` with ``u`` on the sphere and ``0 < t <= 1``."""

    u: ScaledVec
    t: Fraction

    def __post_init__(self):
        object.__setattr__(self, "t", Fraction(self.t))
        if not 0 < self.t <= 1:
            raise OrbitError("BAD_RADIUS", f"radius must lie in (0, 1], got {self.t}", self.t)
        if not self.u.is_unit():
            raise OrbitError("NOT_ON_SPHERE", f"{self.u} does not have unit norm", self.u)

    def cartesian(self) -> tuple[Fraction, Fraction, Fraction]:
        return tuple(self.t * x for x in self.u.as_fractions())  # type: ignore[return-value]


@dataclass(frozen=True)
class OffsetRotation:
    """``x -> R (x - q) + q``: rotation about the line through ``q`` along R's axis."""

    rotation: linalg.Matrix
    center: tuple = (0, 0, 0)

    def __post_init__(self):
        r = linalg.to_fraction_matrix(self.rotation)
        if not linalg.is_rotation(r):
            raise OrbitError("BAD_ROTATION", "matrix is not in SO(3)", self.rotation)
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "center", linalg.to_fraction_vector(self.center))

    def __call__(self, x):
        x = linalg.to_fraction_vector(x)
        return linalg.vadd(linalg.matvec(self.rotation, linalg.vsub(x, self.center)), self.center)


QUARTER_TURN_X = OffsetRotation(((1, 0, 0), (0, 0, -1), (0, 1, 0)))


def _as_map(rho, triple: PythagoreanTriple | None) -> Callable:
    if isinstance(rho, Word):
        t = triple or PYTHAGOREAN_345
        return lambda p: apply_word(rho, p, t)
    if callable(rho):
        return rho
    raise TypeError(f"cannot act with {type(rho).__name__}")


def _point(x):
    return tuple(Fraction(c) for c in x) if not isinstance(x, ScaledVec) else x


def orbit_segment(rho, seed, n: int, triple: PythagoreanTriple | None = None) -> list:
    """``[seed, rho(seed), ..., rho^n(seed)]``."""
    if n < 0:
        raise ValueError("orbit length must be non-negative")
    act = _as_map(rho, triple)
    out = [_point(seed)]
    for _ in range(n):
        out.append(act(out[-1]))
    return out


@dataclass
class DistinctReport:
    distinct: bool
    count: int
    collision: tuple[int, int] | None = None

    def __bool__(self) -> bool:
        return self.distinct


def check_distinct(points: Iterable) -> DistinctReport:
    """Pairwise distinctness; ``collision = (i, j)`` with ``j`` minimal."""
    first: dict = {}
    n = 0
    for j, p in enumerate(points):
        n = j + 1
        if p in first:
            return DistinctReport(False, n, (first[p], j))
        first[p] = j
    return DistinctReport(True, n)


@dataclass
class AbsorptionReport:
    passed: bool
    n: int
    points: int
    collision: tuple[int, int] | None = None  # (n, m): rho^n D meets rho^(n+m) D
    identity_holds: bool = True
    failed_at: int | None = None

    def summary(self) -> str:
        if self.passed:
            return f"PASS: {self.points} points, layers disjoint and rho A_k = A_(k+1) minus D for k <= {self.n}"
        if self.collision:
            return f"FAIL: layer {self.collision[0]} meets layer {self.collision[0] + self.collision[1]}"
        return f"FAIL: absorption identity breaks at k = {self.failed_at}"


def truncated_absorption_check(rho, D: Iterable, n: int, triple: PythagoreanTriple | None = None) -> AbsorptionReport:
    """With ``A_k`` the union of the layers ``rho^i D`` for ``i <= k``:
    the layers up to ``n + 1`` are pairwise disjoint and
    ``rho A_k = A_(k+1) minus D`` for every ``k <= n``."""
    act = _as_map(rho, triple)
    base = [_point(d) for d in D]
    for d in base:
        if act(d) == d:
            raise OrbitError("AXIS_POINT", f"{d} lies on the rotation axis", d)
    layer_of: dict = {}
    layers = [base]
    for d in base:
        layer_of[d] = 0
    for k in range(1, n + 2):
        nxt = [act(x) for x in layers[-1]]
        for x in nxt:
            if x in layer_of:
                i = layer_of[x]
                return AbsorptionReport(False, n, len(layer_of), (i, k - i), False)
            layer_of[x] = k
        layers.append(nxt)
    dset = set(base)
    moved: set = set()
    upto: set = set(base)
    for k in range(n + 1):
        moved.update(act(x) for x in layers[k])
        upto.update(layers[k + 1])
        if moved != upto - dset:
            return AbsorptionReport(False, n, len(layer_of), None, False, k)
    return AbsorptionReport(True, n, len(layer_of))


def pole_check(w: Word, p: ScaledVec, triple: PythagoreanTriple = PYTHAGOREAN_345) -> bool:
    if len(w) == 0:
        raise OrbitError("EMPTY_WORD", "the identity fixes every point")
    return apply_word(w, p, triple) == p


# -- finite Hausdorff lift ------------------------------------------------------------

CLASS_OF = {
    CosetLabel.E: "E",
    CosetLabel.SIGMA_POS: "Y",
    CosetLabel.SIGMA_NEG: "Y",
    CosetLabel.TAU_POS: "Z",
    CosetLabel.TAU_NEG: "Z",
}


def point_class(w: Word) -> str:
    return CLASS_OF[leading_coset(w)]


def _orbit_of_seed(triple: PythagoreanTriple, seed: ScaledVec, cutoff: int, index: int):
    """Points of one seed plus its per-orbit checks, as plain data."""
    points: dict[Word, ScaledVec] = {}
    first: dict[ScaledVec, Word] = {}
    for w in enumerate_reduced(cutoff):
        p = apply_word(w, seed, triple)
        if p in first:
            other = first[p]
            if len(other) == 0:
                raise OrbitError("POLE_SEED", f"seed {index} is fixed by {w.to_ascii()}", (index, w.to_ascii()))
            raise OrbitError(
                "ORBIT_COLLISION",
                f"seed {index}: {other.to_ascii()} and {w.to_ascii()} give the same point",
                (index, other.to_ascii(), w.to_ascii()),
            )
        first[p] = w
        points[w] = p
    shifts = {}
    for gen, forbidden in ((Letter.SIGMA, Letter.SIGMA_INV), (Letter.TAU, Letter.TAU_INV)):
        back = Word((gen.inverse,))
        moved = {apply_word(back, p, triple) for w, p in points.items() if len(w) and w.letters[0] is gen}
        target = {p for w, p in points.items() if len(w) < cutoff and not (len(w) and w.letters[0] is forbidden)}
        shifts[gen.ascii] = moved == target
    return points, shifts


@dataclass
class LiftSample:
    triple: PythagoreanTriple
    seeds: list
    cutoff: int
    points: list = field(default_factory=list)  # per seed: {word: point}
    classes: list = field(default_factory=list)  # per seed: {word: "Y" | "Z" | "E"}
    shift_identity: list = field(default_factory=list)  # per seed: {"s": bool, "t": bool}
    overlaps: list = field(default_factory=list)  # cross-orbit coincidences (seed, word, seed, word)
    yz_disjoint: bool = True

    @property
    def passed(self) -> bool:
        return self.yz_disjoint and all(all(s.values()) for s in self.shift_identity)

    def rows(self):
        for i, pts in enumerate(self.points):
            for w, p in pts.items():
                yield i, w.to_ascii(), self.classes[i][w], p.v, p.n

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["seed_id", "word", "class", "x_num", "y_num", "z_num", "exp"])
        for i, w, cls, v, n in self.rows():
            out.writerow([i, w, cls, v[0], v[1], v[2], n])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "triple": self.triple.as_list(),
            "cutoff": self.cutoff,
            "seeds": [{"id": i, "v": list(s.v), "exp": s.n} for i, s in enumerate(self.seeds)],
            "points": [
                {"seed_id": i, "word": w, "class": cls, "v": list(v), "exp": n}
                for i, w, cls, v, n in self.rows()
            ],
            "checks": {
                "per_orbit_injective": True,
                "y_z_disjoint": self.yz_disjoint,
                "shift_identity": [dict(s) for s in self.shift_identity],
            },
            "orbit_overlaps": [list(o) for o in self.overlaps],
            "verdict": "PASS" if self.passed else "FAIL",
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    def summary(self) -> str:
        total = sum(len(p) for p in self.points)
        counts = {c: sum(list(cl.values()).count(c) for cl in self.classes) for c in "YZE"}
        head = "PASS" if self.passed else "FAIL"
        return (
            f"{head}: {len(self.seeds)} seeds, cutoff {self.cutoff}, {total} points "
            f"(Y {counts['Y']}, Z {counts['Z']}, E {counts['E']}); "
            f"{len(self.overlaps)} cross-orbit coincidences"
        )


def hausdorff_lift_sample(
    triple: PythagoreanTriple,
    seeds: Sequence,
    cutoff: int,
    threads: int = 1,
) -> LiftSample:
    """All ``w * seed`` with ``|w| <= cutoff``, classified by the leading letter of ``w``.

    Each orbit must be injective (a repeat means the seed is a pole or the
    rotations are not free); a point landing in both Y and Z across orbits
    aborts.  Other cross-orbit coincidences are recorded in ``overlaps``.
    """
    if cutoff < 1:
        raise ValueError("cutoff must be at least 1")
    pts = [s if isinstance(s, ScaledVec) else sphere_point(s, triple.c) for s in seeds]
    for i, s in enumerate(pts):
        if s.base != triple.c:
            raise OrbitError("BAD_SEED", f"seed {i} is over base {s.base}, not {triple.c}", i)
        if not s.is_unit():
            raise OrbitError("NOT_ON_SPHERE", f"seed {i} does not have unit norm", i)
    args = [(triple, s, cutoff, i) for i, s in enumerate(pts)]
    if threads > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_orbit_of_seed, *zip(*args)))
    else:
        results = [_orbit_of_seed(*a) for a in args]

    sample = LiftSample(triple, pts, cutoff)
    owner: dict[ScaledVec, tuple[int, Word, str]] = {}
    for i, (points, shifts) in enumerate(results):
        classes = {w: point_class(w) for w in points}
        sample.points.append(points)
        sample.classes.append(classes)
        sample.shift_identity.append(shifts)
        for w, p in points.items():
            if p in owner:
                j, wj, cj = owner[p]
                if {cj, classes[w]} == {"Y", "Z"}:
                    raise OrbitError(
                        "ORBIT_COLLISION",
                        f"seed {j} word {wj.to_ascii()} (class {cj}) meets seed {i} word {w.to_ascii()} (class {classes[w]})",
                        (j, wj.to_ascii(), i, w.to_ascii()),
                    )
                sample.overlaps.append((j, wj.to_ascii(), i, w.to_ascii()))
            else:
                owner[p] = (i, w, classes[w])
    return sample


# -- cone extension and the center demo --------------------------------------------


def _sphere_map(f, triple: PythagoreanTriple | None) -> Callable[[ScaledVec], ScaledVec]:
    if isinstance(f, Word):
        t = triple or PYTHAGOREAN_345
        return lambda u: apply_word(f, u, t)
    domain = getattr(f, "domain", None)
    if domain is not None:
        def act(u: ScaledVec) -> ScaledVec:
            x = u.as_fractions()
            if x not in domain:
                raise OrbitError("OUTSIDE_DOMAIN", f"{x} is not in the map's domain", x)
            return ScaledVec.from_rational(f(x), u.base)
        return act
    return f


def cone_extend(f, points: Iterable[BallPoint], triple: PythagoreanTriple | None = None) -> list[BallPoint]:
    """``t u -> t f(u)``: act on the direction, keep the radius."""
    act = _sphere_map(f, triple)
    return [BallPoint(act(p.u), p.t) for p in points]


@dataclass
class CenterDemoReport:
    passed: bool
    n: int
    first_iterate: tuple
    within_two_thirds: bool
    distinct: DistinctReport
    absorption: AbsorptionReport
    max_norm2: Fraction

    def summary(self) -> str:
        head = "PASS" if self.passed else "FAIL"
        return (
            f"{head}: {self.n + 1} orbit points of the origin, max |x|^2 = {float(self.max_norm2):.6f} "
            f"(bound 4/9: {'ok' if self.within_two_thirds else 'violated'}), "
            f"distinct: {bool(self.distinct)}, absorption: {'PASS' if self.absorption.passed else 'FAIL'}"
        )


CENTER = (Fraction(1, 3), Fraction(0), Fraction(0))


def z_rotation(triple: PythagoreanTriple) -> linalg.Matrix:
    a, b, c = triple.a, triple.b, triple.c
    return linalg.scale(Fraction(1, c), ((b, -a, 0), (a, b, 0), (0, 0, c)))


def center_absorption_demo(triple: PythagoreanTriple = PYTHAGOREAN_345, n: int = 500) -> CenterDemoReport:
    """Rotate about the vertical line through ``(1/3, 0, 0)`` and follow the origin."""
    if n < 1:
        raise ValueError("N must be at least 1")
    rho = OffsetRotation(z_rotation(triple), CENTER)
    origin = (Fraction(0),) * 3
    orbit = orbit_segment(rho, origin, n)
    norms = [linalg.norm2(x) for x in orbit]
    bound = Fraction(4, 9)
    within = all(r <= bound for r in norms)
    distinct = check_distinct(orbit)
    absorption = truncated_absorption_check(rho, [origin], n)
    return CenterDemoReport(
        within and distinct.distinct and absorption.passed,
        n,
        orbit[1],
        within,
        distinct,
        absorption,
        max(norms),
    )


__all__ = [
    "SpherePoint", "sphere_point", "BallPoint", "OffsetRotation", "QUARTER_TURN_X",
    "orbit_segment", "check_distinct", "DistinctReport", "truncated_absorption_check",
    "AbsorptionReport", "pole_check", "point_class", "LiftSample", "hausdorff_lift_sample",
    "cone_extend", "center_absorption_demo", "CenterDemoReport", "z_rotation", "CENTER",
]
