"""Integer generator matrices from a primitive Pythagorean triple.

For a triple ``(a, b, c)`` the rotations sigma (about the x-axis) and tau
(about the y-axis) by the angle with ``sin = a/c``, ``cos = b/c`` are
represented by the integer matrices ``s+ = c*sigma``, ``s- = c*sigma^-1``,
``t+ = c*tau`` and ``t- = c*tau^-1``.

Composition convention, shared by every module of the package: the word
``[g1, ..., gn]`` acts as ``g1 o ... o gn``, so the rightmost letter is
applied first.  Acting with a word of length ``n`` multiplies the integer
representative by ``c**n``; :class:`ScaledVec` keeps that exponent
explicit instead of dividing it out.
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import TripleError
from .linalg import Matrix
from .words import LETTERS, Letter, Word


@dataclass(frozen=True)
class PythagoreanTriple:
    a: int
    b: int
    c: int

    def __post_init__(self):
        a, b, c = self.a, self.b, self.c
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in (a, b, c)):
            raise TripleError("NOT_INTEGER", f"({a},{b},{c}) must be integers")
        if min(a, b, c) <= 0:
            raise TripleError("NOT_POSITIVE", f"({a},{b},{c}) must be positive")
        if a * a + b * b != c * c:
            raise TripleError("NOT_PYTHAGOREAN", f"{a}^2 + {b}^2 != {c}^2")
        if math.gcd(a, b) != 1:
            raise TripleError("NON_PRIMITIVE", f"gcd({a},{b}) = {math.gcd(a, b)}")
        if not a < b:
            raise TripleError("LEG_ORDER", f"legs must satisfy a < b, got a={a}, b={b}")

    @classmethod
    def parse(cls, text: str) -> "PythagoreanTriple":
        try:
            a, b, c = (int(x) for x in text.split(","))
        except ValueError:
            raise TripleError("BAD_TRIPLE", f"cannot parse triple {text!r}; expected A,B,C") from None
        return cls(a, b, c)

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c]

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


PYTHAGOREAN_345 = PythagoreanTriple(3, 4, 5)


class GenKind(enum.Enum):
    S_PLUS = "s_plus"
    S_MINUS = "s_minus"
    T_PLUS = "t_plus"
    T_MINUS = "t_minus"

    @property
    def inverse(self) -> "GenKind":
        return _KIND_INVERSE[self]

    @property
    def letter(self) -> Letter:
        return _LETTER_OF_KIND[self]


_KIND_INVERSE = {
    GenKind.S_PLUS: GenKind.S_MINUS,
    GenKind.S_MINUS: GenKind.S_PLUS,
    GenKind.T_PLUS: GenKind.T_MINUS,
    GenKind.T_MINUS: GenKind.T_PLUS,
}
_LETTER_OF_KIND = {
    GenKind.S_PLUS: Letter.SIGMA,
    GenKind.S_MINUS: Letter.SIGMA_INV,
    GenKind.T_PLUS: Letter.TAU,
    GenKind.T_MINUS: Letter.TAU_INV,
}
KIND_OF_LETTER = {v: k for k, v in _LETTER_OF_KIND.items()}
KINDS: tuple[GenKind, ...] = tuple(GenKind)


@dataclass(frozen=True)
class GeneratorMap:
    kind: GenKind
    matrix: Matrix

    def __call__(self, v):
        return linalg.matvec(self.matrix, v)


def _generator_matrices(t: PythagoreanTriple) -> dict[GenKind, Matrix]:
    a, b, c = t.a, t.b, t.c
    return {
        GenKind.S_PLUS: ((c, 0, 0), (0, b, -a), (0, a, b)),
        GenKind.S_MINUS: ((c, 0, 0), (0, b, a), (0, -a, b)),
        GenKind.T_PLUS: ((b, 0, a), (0, c, 0), (-a, 0, b)),
        GenKind.T_MINUS: ((b, 0, -a), (0, c, 0), (a, 0, b)),
    }


def make_generators(triple: PythagoreanTriple) -> dict[GenKind, GeneratorMap]:
    """The four integer maps s+, s-, t+, t-, with their invariants re-checked."""
    if not isinstance(triple, PythagoreanTriple):
        triple = PythagoreanTriple(*triple)
    c = triple.c
    gens = {}
    for kind, m in _generator_matrices(triple).items():
        if linalg.matmul(linalg.transpose(m), m) != linalg.scale(c * c, linalg.IDENTITY):
            raise TripleError("NOT_ORTHOGONAL", f"{kind.value}: M^T M != c^2 I")
        if linalg.det(m) != c ** 3:
            raise TripleError("BAD_DETERMINANT", f"{kind.value}: det != c^3")
        gens[kind] = GeneratorMap(kind, m)
    return gens


@dataclass(frozen=True, eq=False)
class ScaledVec:
    """The rational vector ``v / base**n`` with the exponent kept explicit.

    Equality is by cross-multiplication and only defined between vectors
    over the same base.  :meth:`normalized` divides out common factors of
    the base; it is never applied implicitly.
    """

    v: tuple[int, int, int]
    n: int = 0
    base: int = 5

    def __post_init__(self):
        v = tuple(int(x) for x in self.v)
        if len(v) != 3:
            raise ValueError("ScaledVec needs three components")
        if self.n < 0:
            raise ValueError("exponent must be non-negative")
        object.__setattr__(self, "v", v)

    @classmethod
    def from_rational(cls, components: Sequence, base: int) -> "ScaledVec":
        """Exact conversion; every denominator must divide a power of ``base``."""
        fr = [Fraction(x) for x in components]
        n = 0
        while any((base ** n * f).denominator != 1 for f in fr):
            n += 1
            if n > 4096:
                raise ValueError(f"{components} is not a vector over 1/{base}^n")
        return cls(tuple(int(base ** n * f) for f in fr), n, base)

    def __eq__(self, other):
        if not isinstance(other, ScaledVec):
            return NotImplemented
        if self.base != other.base:
            return False
        c = self.base
        if self.n >= other.n:
            k = c ** (self.n - other.n)
            return self.v == tuple(k * x for x in other.v)
        k = c ** (other.n - self.n)
        return other.v == tuple(k * x for x in self.v)

    def __hash__(self):
        w = self.normalized()
        return hash((w.v, w.n, w.base))

    def normalized(self) -> "ScaledVec":
        v, n, c = self.v, self.n, self.base
        while n > 0 and all(x % c == 0 for x in v):
            v = tuple(x // c for x in v)
            n -= 1
        return ScaledVec(v, n, c)

    def as_fractions(self) -> tuple[Fraction, Fraction, Fraction]:
        d = self.base ** self.n
        return tuple(Fraction(x, d) for x in self.v)  # type: ignore[return-value]

    def norm2(self) -> Fraction:
        return Fraction(linalg.norm2(self.v), self.base ** (2 * self.n))

    def is_unit(self) -> bool:
        return linalg.norm2(self.v) == self.base ** (2 * self.n)

    def __repr__(self) -> str:
        return f"ScaledVec({self.v}/{self.base}^{self.n})"


def _letter_matrices(triple: PythagoreanTriple) -> dict[Letter, Matrix]:
    m = _generator_matrices(triple)
    return {letter: m[KIND_OF_LETTER[letter]] for letter in LETTERS}


def apply_word(w: Word, x: ScaledVec, triple: PythagoreanTriple) -> ScaledVec:
    if x.base != triple.c:
        raise ValueError(f"vector base {x.base} does not match hypotenuse {triple.c}")
    mats = _letter_matrices(triple)
    v = x.v
    for letter in reversed(w.letters):
        v = linalg.matvec(mats[letter], v)
    return ScaledVec(v, x.n + len(w), x.base)


def word_matrix(w: Word, triple: PythagoreanTriple) -> tuple[Matrix, int]:
    mats = _letter_matrices(triple)
    m = linalg.IDENTITY
    for letter in w.letters:
        m = linalg.matmul(m, mats[letter])
    return m, len(w)


def generator_action(triple: PythagoreanTriple, letter: Letter):
    """The rational rotation matrix for one letter (entries over 1/c)."""
    m = _letter_matrices(triple)[letter]
    return linalg.scale(Fraction(1, triple.c), m)


# -- brute-force freeness sweep -------------------------------------------------


@dataclass
class FreenessReport:
    triple: PythagoreanTriple
    max_len: int
    witness: ScaledVec
    words_checked: int
    passed: bool
    counterexample: Word | None = None
    reason: str = ""
    # informational: does every word send the witness to a vector that is
    # nonzero mod c?  Holds for (0,0,1) but not for every legitimate witness.
    residues_nonzero: bool = True
    first_zero_residue: Word | None = None

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        s = (f"verify-free {self.triple} max_len={self.max_len} witness={self.witness.v}: "
             f"{status} over {self.words_checked} nonempty reduced words")
        if not self.passed:
            s += f"; {self.reason}; counterexample {self.counterexample}"
        return s


def _sweep_prefix(triple: PythagoreanTriple, max_len: int, witness: tuple, first: Letter):
    """Depth-first sweep of every reduced word that starts with ``first``.

    Returns ``(count, failure, zero_residue)`` where the latter two are the
    enumeration-order-minimal offending words (as sort keys) or None.
    """
    mats = _letter_matrices(triple)
    c = triple.c
    failure = None
    zero = None
    count = 0
    stack = [((first,), mats[first])]
    while stack:
        letters, m = stack.pop()
        count += 1
        n = len(letters)
        scaled = c ** n
        v = linalg.matvec(m, witness)
        key = (n, tuple(int(x) for x in letters))
        bad = None
        if m == linalg.scale(scaled, linalg.IDENTITY):
            bad = "word matrix equals c^|w| I"
        elif v == tuple(scaled * x for x in witness):
            bad = "witness is scale-fixed"
        if bad and (failure is None or key < failure[0]):
            failure = (key, bad)
        if all(x % c == 0 for x in v) and (zero is None or key < zero):
            zero = key
        if n < max_len:
            for nxt in LETTERS:
                if nxt is not letters[-1].inverse:
                    stack.append((letters + (nxt,), linalg.matmul(m, mats[nxt])))
    return count, failure, zero


def brute_force_freeness(
    triple: PythagoreanTriple,
    max_len: int,
    witness: ScaledVec | None = None,
    threads: int = 1,
) -> FreenessReport:
    """Exhaustively check that no nonempty reduced word of length <= max_len
    fixes the witness direction or equals a scalar matrix."""
    if witness is None:
        witness = ScaledVec((0, 0, 1), 0, triple.c)
    if not any(witness.v):
        raise ValueError("witness must be nonzero")
    results = []
    if max_len >= 1:
        args = [(triple, max_len, witness.v, first) for first in LETTERS]
        if threads > 1:
            with ProcessPoolExecutor(max_workers=threads) as pool:
                results = list(pool.map(_sweep_prefix, *zip(*args)))
        else:
            results = [_sweep_prefix(*a) for a in args]
    count = sum(r[0] for r in results)
    failures = [r[1] for r in results if r[1] is not None]
    zeros = [r[2] for r in results if r[2] is not None]
    report = FreenessReport(triple, max_len, witness, count, not failures)
    if failures:
        key, reason = min(failures)
        report.counterexample = Word._trusted(tuple(Letter(i) for i in key[1]))
        report.reason = reason
    if zeros:
        report.residues_nonzero = False
        report.first_zero_residue = Word._trusted(tuple(Letter(i) for i in min(zeros)[1]))
    return report
