"""JSON instances for the ``bsb`` and ``compose`` commands.

Shape::

    {
      "backend": "integer" | "finite",
      "A": <set>,                 # domain of f
      "B": <set>,                 # bsb: domain of g; compose: optional, defaults to f(A)
      "f": [<piece>, ...],
      "g": [<piece>, ...]
    }

A ``<set>`` is, for ``integer``, a list of progressions
``{"start": s, "step": k, "end": e}`` (``step`` defaults to 1, ``end`` is
exclusive and optional), or an object ``{"progressions": [...]}``.  For
``finite`` it is a list of elements (or ``{"elements": [...]}``); an
element is an integer, a string label, or a 3-list of rationals such as
``[0, "3/5", "4/5"]``.

A ``<piece>`` is ``{"block": <set>, "map": <motion>}`` with ``<motion>`` one
of ``{"u": u, "v": v, "d": d}`` for ``n -> (u n + v)/d``,
``{"perm": [[x, y], ...]}`` for a relabelling, or
``{"rotation": 3x3, "translation": 3-vector}`` for a rigid motion.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from ..errors import EquidecompError
from .intsets import IntSet, Progression
from .motions import Affine, Permutation, RigidMotion
from .piecewise import Piece, PiecewiseMap
from .regions import FiniteSet, IntRegion

BACKENDS = ("integer", "finite")


def _bad(msg: str) -> EquidecompError:
    return EquidecompError("BAD_INSTANCE", msg)


def _element(x):
    if isinstance(x, list):
        if len(x) != 3:
            raise _bad(f"point must have 3 coordinates, got {x!r}")
        return tuple(Fraction(c) for c in x)
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return x
    raise _bad(f"unsupported element {x!r}")


def parse_set(backend: str, data: Any):
    if backend == "integer":
        if isinstance(data, dict):
            data = [data]
        flat = []
        for item in data:
            if isinstance(item, dict) and "progressions" in item:
                if item.get("filters"):
                    raise _bad("filtered blocks are computed, not loaded")
                flat.extend(item["progressions"])
            else:
                flat.append(item)
        data = flat
        try:
            return IntRegion.of(IntSet.from_progressions(Progression.from_json(p) for p in data))
        except (KeyError, TypeError, ValueError) as exc:
            raise _bad(f"bad progression list: {exc}") from exc
    if isinstance(data, dict):
        data = data.get("elements", [])
    return FiniteSet(_element(x) for x in data)


def parse_motion(data: dict):
    if not isinstance(data, dict):
        raise _bad(f"map must be an object, got {data!r}")
    if "perm" in data:
        return Permutation((_element(a), _element(b)) for a, b in data["perm"])
    if "rotation" in data:
        return RigidMotion(
            tuple(tuple(Fraction(x) for x in row) for row in data["rotation"]),
            tuple(Fraction(x) for x in data.get("translation", (0, 0, 0))),
        )
    if "u" in data or "v" in data:
        d = int(data.get("d", 1))
        if d < 1:
            raise _bad(f"denominator must be positive, got {d}")
        return Affine.uvd(int(data.get("u", 1)), int(data.get("v", 0)), d)
    raise _bad(f"unrecognised map {data!r}")


def parse_map(backend: str, domain, pieces: list) -> PiecewiseMap:
    parsed = []
    for p in pieces:
        if not isinstance(p, dict) or "block" not in p or "map" not in p:
            raise _bad(f"piece needs 'block' and 'map': {p!r}")
        parsed.append(Piece(parse_set(backend, p["block"]), parse_motion(p["map"])))
    return PiecewiseMap(domain, parsed)


def load_instance(data: dict | str) -> dict:
    """Parse an instance into ``{"backend", "A", "B", "f", "g"}`` (``B`` may be None)."""
    if isinstance(data, str):
        data = json.loads(data)
    backend = data.get("backend")
    if backend not in BACKENDS:
        raise _bad(f"backend must be one of {BACKENDS}, got {backend!r}")
    for key in ("A", "f", "g"):
        if key not in data:
            raise _bad(f"missing key {key!r}")
    A = parse_set(backend, data["A"])
    f = parse_map(backend, A, data["f"])
    B = parse_set(backend, data["B"]) if "B" in data else None
    g = parse_map(backend, B if B is not None else f.image(), data["g"])
    return {"backend": backend, "A": A, "B": B if B is not None else g.domain, "f": f, "g": g}


def dump_map(pm: PiecewiseMap) -> list:
    return [{"block": p.block.to_json(), "map": p.motion.to_json()} for p in pm.pieces]


__all__ = ["load_instance", "parse_set", "parse_motion", "parse_map", "dump_map"]
