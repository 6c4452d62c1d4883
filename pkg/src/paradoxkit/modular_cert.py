"""Mod-c freeness certificates for Pythagorean rotation pairs.

Reducing the integer generators modulo ``c`` kills one coordinate and
leaves maps whose ranges are lines and whose kernels are planes in
``Z_c^3``.  If the range of every map meets the kernel of every map it
may be followed by (anything except its own inverse) only in 0, and some
witness avoids all four kernels, then no reduced word sends the witness
to 0 mod c.  Since ``c^n * v = 0 mod c``, no nonempty reduced word can
act as the identity: the pair generates a free group.

Subspaces are carried twice: as a symbolic form derived from the
multipliers and as an explicit element list from exhaustive enumeration
of ``Z_c^3``.  Both must agree.

Symbolic form.  ``zero_index`` is the coordinate the map annihilates
(forced to 0 in the range, unconstrained in the kernel).  With ``i < j``
the two remaining coordinates, members satisfy ``v[j] = ratio * v[i]``.
"""

from __future__ import annotations

import enum
import itertools
import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from . import linalg
from .errors import CertificateError, TripleError
from .linalg import Matrix
from .rotations import KINDS, GenKind, PythagoreanTriple, make_generators

DEFAULT_MAX_MODULUS = 1000

Vec3 = tuple[int, int, int]


class Role(enum.Enum):
    RANGE = "range"
    KERNEL = "kernel"


@dataclass(frozen=True)
class ModMap:
    kind: GenKind
    matrix: Matrix
    modulus: int

    def __call__(self, v) -> Vec3:
        c = self.modulus
        return tuple(x % c for x in linalg.matvec(self.matrix, v))  # type: ignore[return-value]

    @property
    def annihilated_index(self) -> int:
        """The coordinate whose row and column reduce to zero."""
        for i in range(3):
            if all(self.matrix[i][j] == 0 for j in range(3)) and all(
                self.matrix[j][i] == 0 for j in range(3)
            ):
                return i
        raise CertificateError("NO_ZERO_ROW", f"{self.kind.value} mod {self.modulus} kills no coordinate")


def reduce_mod(gens) -> dict[GenKind, ModMap]:
    moduli = {m.matrix[1][1] if m.kind in (GenKind.T_PLUS, GenKind.T_MINUS) else m.matrix[0][0]
              for m in gens.values()}
    if len(moduli) != 1:
        raise CertificateError("MIXED_MODULI", f"generators disagree on c: {sorted(moduli)}")
    (c,) = moduli
    return {kind: ModMap(kind, linalg.mat_mod(g.matrix, c), c) for kind, g in gens.items()}


@dataclass(frozen=True)
class MultiplierPair:
    """``k*a = -b, k*b = a`` and ``mu*a = b, mu*b = -a`` modulo c.

    These force ``mu = -k``, ``k^2 = -1`` and ``k*mu = 1``.
    """

    k: int
    mu: int
    modulus: int

    def holds_for(self, triple: PythagoreanTriple) -> bool:
        a, b, c = triple.a, triple.b, triple.c
        return (
            (self.k * a + b) % c == 0
            and (self.k * b - a) % c == 0
            and (self.mu * a - b) % c == 0
            and (self.mu * b + a) % c == 0
        )


def derived_multipliers(triple: PythagoreanTriple) -> MultiplierPair:
    a, b, c = triple.a, triple.b, triple.c
    try:
        a_inv = pow(a, -1, c)
        b_inv = pow(b, -1, c)
    except ValueError:
        raise TripleError("NOT_INVERTIBLE", f"a={a} or b={b} has no inverse mod {c}") from None
    pair = MultiplierPair(a * b_inv % c, b * a_inv % c, c)
    if not pair.holds_for(triple):
        raise CertificateError("MULTIPLIERS", f"k={pair.k}, mu={pair.mu} fail their congruences mod {c}")
    return pair


# derived by hand from the shape of each map; verified exhaustively below
_RATIO_RULE = {
    (GenKind.S_PLUS, Role.RANGE): "k",
    (GenKind.S_PLUS, Role.KERNEL): "mu",
    (GenKind.S_MINUS, Role.RANGE): "mu",
    (GenKind.S_MINUS, Role.KERNEL): "k",
    (GenKind.T_PLUS, Role.RANGE): "mu",
    (GenKind.T_PLUS, Role.KERNEL): "k",
    (GenKind.T_MINUS, Role.RANGE): "k",
    (GenKind.T_MINUS, Role.KERNEL): "mu",
}


@dataclass(frozen=True)
class SubspaceDesc:
    role: Role
    kind: GenKind
    zero_index: int
    ratio: int
    modulus: int
    elements: frozenset

    def symbolic_elements(self) -> frozenset:
        """The set generated by the symbolic form alone."""
        return frozenset(symbolic_set(self.role, self.zero_index, self.ratio, self.modulus))

    def describe(self) -> str:
        """Human form, e.g. ``{(0,m,2m)}`` or ``{(m,n,3n)}``."""
        i, j = (x for x in range(3) if x != self.zero_index)
        slots = ["", "", ""]
        if self.role is Role.RANGE:
            slots[self.zero_index] = "0"
            slots[i], slots[j] = "m", f"{self.ratio}m"
        else:
            slots[self.zero_index] = "m"
            slots[i], slots[j] = "n", f"{self.ratio}n"
        return "{(" + ",".join(slots) + ")}"

    def sorted_elements(self) -> list[Vec3]:
        return sorted(self.elements)


def symbolic_set(role: Role, zero_index: int, ratio: int, c: int) -> Iterable[Vec3]:
    i, j = (x for x in range(3) if x != zero_index)
    frees = range(c) if role is Role.KERNEL else (0,)
    for free in frees:
        for m in range(c):
            v = [0, 0, 0]
            v[zero_index] = free
            v[i] = m
            v[j] = ratio * m % c
            yield tuple(v)  # type: ignore[misc]


def _cube(c: int):
    return itertools.product(range(c), repeat=3)


def exhaustive_image(m: ModMap) -> frozenset:
    return frozenset(m(v) for v in _cube(m.modulus))


def exhaustive_kernel(m: ModMap) -> frozenset:
    zero = (0, 0, 0)
    return frozenset(v for v in _cube(m.modulus) if m(v) == zero)


def range_kernel(m: ModMap, pair: MultiplierPair, max_modulus: int = DEFAULT_MAX_MODULUS):
    """Symbolic range and kernel of ``m``, cross-checked against brute force."""
    c = m.modulus
    if c > max_modulus:
        raise CertificateError("MODULUS_TOO_LARGE", f"c={c} exceeds the configured bound {max_modulus}")
    z = m.annihilated_index
    out = []
    for role, brute in ((Role.RANGE, exhaustive_image(m)), (Role.KERNEL, exhaustive_kernel(m))):
        ratio = getattr(pair, _RATIO_RULE[(m.kind, role)]) % c
        desc = SubspaceDesc(role, m.kind, z, ratio, c, brute)
        symbolic = desc.symbolic_elements()
        if symbolic != brute:
            extra = min(symbolic ^ brute)
            raise CertificateError(
                "SUBSPACE_MISMATCH",
                f"{role.value}({m.kind.value}) symbolic form {desc.describe()} disagrees with enumeration",
                extra,
            )
        expected = c if role is Role.RANGE else c * c
        if len(brute) != expected:
            raise CertificateError("SUBSPACE_SIZE", f"|{role.value}({m.kind.value})| = {len(brute)} != {expected}")
        out.append(desc)
    return out[0], out[1]


# -- certificate -----------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    violation: Any = None

    def to_json(self) -> dict:
        d: dict[str, Any] = {"name": self.name, "pass": self.passed}
        if self.violation is not None:
            d["violation"] = _jsonable(self.violation)
        return d


def _jsonable(x):
    if isinstance(x, (tuple, list)):
        return [_jsonable(y) for y in x]
    if isinstance(x, enum.Enum):
        return x.value
    return x


@dataclass
class FreenessCertificate:
    triple: PythagoreanTriple
    maps: dict[GenKind, ModMap]
    subspaces: dict[tuple[GenKind, Role], SubspaceDesc]
    multipliers: MultiplierPair
    witness: Vec3 = (0, 0, 1)
    checks: list[Check] = field(default_factory=list)
    verdict: str = "FAIL"

    @property
    def modulus(self) -> int:
        return self.triple.c

    def range_of(self, kind: GenKind) -> frozenset:
        return self.subspaces[(kind, Role.RANGE)].elements

    def kernel_of(self, kind: GenKind) -> frozenset:
        return self.subspaces[(kind, Role.KERNEL)].elements

    def to_json(self) -> str:
        return certificate_to_json(self)


def build_certificate(
    triple: PythagoreanTriple,
    witness: Vec3 = (0, 0, 1),
    max_modulus: int = DEFAULT_MAX_MODULUS,
) -> FreenessCertificate:
    maps = reduce_mod(make_generators(triple))
    pair = derived_multipliers(triple)
    subspaces = {}
    for kind in KINDS:
        rng, ker = range_kernel(maps[kind], pair, max_modulus)
        subspaces[(kind, Role.RANGE)] = rng
        subspaces[(kind, Role.KERNEL)] = ker
    cert = FreenessCertificate(triple, maps, subspaces, pair, tuple(x % triple.c for x in witness))
    verdict = verify_certificate(cert, max_modulus)
    cert.checks = verdict.checks
    cert.verdict = verdict.verdict
    return cert


@dataclass
class Verdict:
    verdict: str
    checks: list[Check]

    @property
    def free(self) -> bool:
        return self.verdict == "FREE"

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def _pairing_checks(ranges, kernels, witness, c):
    zero = (0, 0, 0)
    checks = []
    # (a) each range lies inside the kernel of the inverse map
    bad = None
    for g in KINDS:
        leak = ranges[g] - kernels[g.inverse]
        if leak:
            bad = (g.value, g.inverse.value, min(leak))
            break
    checks.append(Check("inverse_pairings", bad is None, bad))

    # (b) every other ordered pair meets only in 0; g == h is included since
    # words like s+s+ occur and need the same guarantee
    bad = None
    for g in KINDS:
        for h in KINDS:
            if h is g.inverse:
                continue
            common = (ranges[g] & kernels[h]) - {zero}
            if common:
                bad = (g.value, h.value, min(common))
                break
        if bad:
            break
    checks.append(Check("trivial_intersections", bad is None, bad))

    # (c) the witness is nonzero and outside all four kernels
    w = tuple(x % c for x in witness)
    bad = None
    if w == zero:
        bad = ("zero", w)
    for g in KINDS:
        if bad is None and w in kernels[g]:
            bad = (g.value, w)
    checks.append(Check("witness_outside_kernels", bad is None, bad))
    return checks


def verify_certificate(cert: FreenessCertificate, max_modulus: int = DEFAULT_MAX_MODULUS) -> Verdict:
    """Recompute everything recomputable and report each check."""
    checks: list[Check] = []
    c = cert.triple.c
    try:
        triple = PythagoreanTriple(cert.triple.a, cert.triple.b, cert.triple.c)
    except TripleError as exc:
        return Verdict("FAIL", [Check("triple_primitive", False, exc.code)])
    if c > max_modulus:
        return Verdict("FAIL", [Check("modulus_bound", False, c)])

    # (d) stored maps equal freshly reduced generators
    fresh = reduce_mod(make_generators(triple))
    bad = next((k.value for k in KINDS if cert.maps.get(k) != fresh[k]), None)
    checks.append(Check("maps_match_generators", bad is None, bad))

    pair = derived_multipliers(triple)
    ok = cert.multipliers.holds_for(triple) and (cert.multipliers.k, cert.multipliers.mu) == (pair.k, pair.mu)
    checks.append(Check("multipliers", ok, None if ok else [cert.multipliers.k, cert.multipliers.mu]))

    # stored element lists against exhaustive sweeps of the fresh maps, and
    # stored symbolic forms against their own element lists
    bad_elems = None
    bad_sym = None
    for kind in KINDS:
        for role, brute in ((Role.RANGE, exhaustive_image(fresh[kind])), (Role.KERNEL, exhaustive_kernel(fresh[kind]))):
            desc = cert.subspaces.get((kind, role))
            if desc is None:
                bad_elems = bad_elems or (kind.value, role.value, "missing")
                continue
            if bad_elems is None and desc.elements != brute:
                bad_elems = (kind.value, role.value, min(desc.elements ^ brute))
            if bad_sym is None and desc.symbolic_elements() != desc.elements:
                bad_sym = (kind.value, role.value, desc.describe())
    checks.append(Check("subspaces_match_enumeration", bad_elems is None, bad_elems))
    checks.append(Check("symbolic_forms_match", bad_sym is None, bad_sym))

    if bad_elems is not None and any((k, r) not in cert.subspaces for k in KINDS for r in Role):
        checks.append(Check("pairings", False, "incomplete subspace data"))
    else:
        ranges = {k: cert.subspaces[(k, Role.RANGE)].elements for k in KINDS}
        kernels = {k: cert.subspaces[(k, Role.KERNEL)].elements for k in KINDS}
        checks.extend(_pairing_checks(ranges, kernels, cert.witness, c))

    verdict = "FREE" if all(ch.passed for ch in checks) else "FAIL"
    return Verdict(verdict, checks)


def propagation_holds(cert: FreenessCertificate, max_len: int) -> tuple[bool, Any]:
    """Apply every reduced word of length <= max_len right-to-left to the
    witness mod c and confirm no intermediate vector vanishes."""
    zero = (0, 0, 0)
    stack = [(k, cert.maps[k](cert.witness), 1) for k in KINDS]
    while stack:
        last, v, n = stack.pop()
        if v == zero:
            return False, (last.value, n)
        if n < max_len:
            for k in KINDS:
                if k is not last.inverse:
                    stack.append((k, cert.maps[k](v), n + 1))
    return True, None


# -- JSON --------------------------------------------------------------------------


def certificate_to_dict(cert: FreenessCertificate) -> dict:
    subspaces = []
    for kind in KINDS:
        for role in Role:
            d = cert.subspaces[(kind, role)]
            subspaces.append({
                "map": kind.value,
                "role": role.value,
                "symbolic": {"zero_index": d.zero_index, "ratio": d.ratio},
                "elements": [list(v) for v in d.sorted_elements()],
            })
    return {
        "triple": cert.triple.as_list(),
        "modulus": cert.modulus,
        "maps": {k.value: [list(r) for r in cert.maps[k].matrix] for k in KINDS},
        "subspaces": subspaces,
        "multipliers": {"k": cert.multipliers.k, "mu": cert.multipliers.mu},
        "witness": list(cert.witness),
        "checks": [ch.to_json() for ch in cert.checks],
        "verdict": cert.verdict,
    }


def certificate_to_json(cert: FreenessCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=1) + "\n"


def certificate_from_dict(doc: dict) -> FreenessCertificate:
    try:
        triple = PythagoreanTriple(*doc["triple"])
        c = int(doc["modulus"])
        maps = {GenKind(name): ModMap(GenKind(name), linalg.mat(m), c) for name, m in doc["maps"].items()}
        subspaces = {}
        for s in doc["subspaces"]:
            kind, role = GenKind(s["map"]), Role(s["role"])
            subspaces[(kind, role)] = SubspaceDesc(
                role, kind, int(s["symbolic"]["zero_index"]), int(s["symbolic"]["ratio"]), c,
                frozenset(tuple(int(x) for x in v) for v in s["elements"]),
            )
        pair = MultiplierPair(int(doc["multipliers"]["k"]), int(doc["multipliers"]["mu"]), c)
        witness = tuple(int(x) for x in doc["witness"])
        checks = [Check(ch["name"], bool(ch["pass"]), ch.get("violation")) for ch in doc.get("checks", [])]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, TripleError):
            raise
        raise CertificateError("MALFORMED", f"cannot parse certificate: {exc!r}") from None
    if c != triple.c:
        raise CertificateError("MALFORMED", f"modulus {c} differs from hypotenuse {triple.c}")
    return FreenessCertificate(triple, maps, subspaces, pair, witness, checks, doc.get("verdict", "FAIL"))


def certificate_from_json(text: str) -> FreenessCertificate:
    return certificate_from_dict(json.loads(text))
