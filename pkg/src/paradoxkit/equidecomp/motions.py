"""Group elements that act on the ground sets.

* :class:`Affine`: ``n -> slope*n + offset`` with rational ``slope > 0``.
  This group acts on the rationals; the integer backend only ever applies
  it where the image is a non-negative integer.  Inverses of integer maps
  such as ``n -> 2n + 1`` need the rational slope.
* :class:`RigidMotion`: ``x -> R x + t`` with ``R`` an exact rational
  rotation, for finite sets of rational points.
* :class:`Permutation`: a permutation of finitely many opaque labels.

All three share ``__call__``, ``inverse()`` and ``compose(other)``, where
``a.compose(b)`` is ``a o b`` (``b`` first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Hashable, Iterable, Mapping

from .. import linalg
from ..errors import EquidecompError


def _as_int_if_integral(x: Fraction):
    return int(x) if x.denominator == 1 else x


@dataclass(frozen=True)
class Affine:
    slope: Fraction = Fraction(1)
    offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.slope <= 0:
            raise EquidecompError("BAD_MOTION", f"affine slope must be positive, got {self.slope}")

    @classmethod
    def uvd(cls, u: int, v: int = 0, d: int = 1) -> "Affine":
        """``n -> (u*n + v) / d``."""
        return cls(Fraction(u, d), Fraction(v, d))

    @classmethod
    def shift(cls, v: int) -> "Affine":
        return cls(Fraction(1), Fraction(v))

    def __call__(self, n):
        return _as_int_if_integral(self.slope * n + self.offset)

    def inverse(self) -> "Affine":
        return Affine(1 / self.slope, -self.offset / self.slope)

    def compose(self, other: "Affine") -> "Affine":
        return Affine(self.slope * other.slope, self.slope * other.offset + self.offset)

    def is_identity(self) -> bool:
        return self.slope == 1 and self.offset == 0

    def uvd_form(self) -> tuple[int, int, int]:
        d = math.lcm(self.slope.denominator, self.offset.denominator)
        return int(self.slope * d), int(self.offset * d), d

    def to_json(self) -> dict:
        u, v, d = self.uvd_form()
        out: dict[str, Any] = {"u": u, "v": v}
        if d != 1:
            out["d"] = d
        return out

    def __str__(self) -> str:
        u, v, d = self.uvd_form()
        body = f"{u}n" if u != 1 else "n"
        if v:
            body += f"{'+' if v > 0 else '-'}{abs(v)}"
        return f"n->({body})/{d}" if d != 1 else f"n->{body}"


@dataclass(frozen=True)
class RigidMotion:
    rotation: linalg.Matrix = linalg.IDENTITY
    translation: tuple = (0, 0, 0)

    def __post_init__(self):
        r = linalg.to_fraction_matrix(self.rotation)
        t = linalg.to_fraction_vector(self.translation)
        if not linalg.is_rotation(r):
            raise EquidecompError("BAD_MOTION", "rotation part is not in SO(3)", self.rotation)
        object.__setattr__(self, "rotation", r)
        object.__setattr__(self, "translation", t)

    @classmethod
    def translate(cls, t) -> "RigidMotion":
        return cls(linalg.IDENTITY, t)

    def __call__(self, x):
        return linalg.vadd(linalg.matvec(self.rotation, x), self.translation)

    def inverse(self) -> "RigidMotion":
        rt = linalg.transpose(self.rotation)
        return RigidMotion(rt, linalg.vscale(-1, linalg.matvec(rt, self.translation)))

    def compose(self, other: "RigidMotion") -> "RigidMotion":
        return RigidMotion(
            linalg.matmul(self.rotation, other.rotation),
            linalg.vadd(linalg.matvec(self.rotation, other.translation), self.translation),
        )

    def scaled(self, k) -> "RigidMotion":
        """The conjugate ``x -> k g(x/k)``: same rotation, translation times k."""
        return RigidMotion(self.rotation, linalg.vscale(Fraction(k), self.translation))

    def to_json(self) -> dict:
        return {
            "rotation": [[str(x) for x in row] for row in self.rotation],
            "translation": [str(x) for x in self.translation],
        }


@dataclass(frozen=True, init=False)
class Permutation:
    """A bijection of a finite label set, extended by the identity."""

    pairs: frozenset

    def __init__(self, mapping: Mapping[Hashable, Hashable] | Iterable[tuple] = ()):
        items = dict(mapping.items() if isinstance(mapping, Mapping) else mapping)
        items = {k: v for k, v in items.items() if k != v}
        if set(items) != set(items.values()):
            raise EquidecompError("BAD_MOTION", "mapping is not a permutation of its support", items)
        object.__setattr__(self, "pairs", frozenset(items.items()))
        object.__setattr__(self, "_lookup", items)

    def __call__(self, x):
        return self._lookup.get(x, x)  # type: ignore[attr-defined]

    def inverse(self) -> "Permutation":
        return Permutation({v: k for k, v in self.pairs})

    def compose(self, other: "Permutation") -> "Permutation":
        support = {k for k, _ in self.pairs} | {k for k, _ in other.pairs}
        return Permutation({x: self(other(x)) for x in support})

    def to_json(self) -> dict:
        return {"perm": sorted(([k, v] for k, v in self.pairs), key=repr)}


def identity_like(motion):
    if isinstance(motion, Affine):
        return Affine()
    if isinstance(motion, RigidMotion):
        return RigidMotion()
    return Permutation()
