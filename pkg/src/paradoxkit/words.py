"""Reduced words over the alphabet {sigma, tau} and their inverses.

A :class:`Word` is always stored in reduced form, so ``==`` on words is
equality of free-group elements.  Words act on the left: the word
``[g1, g2, ..., gn]`` names the composite ``g1 . g2 . ... . gn`` in which
``gn`` is applied first.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence


class Symbol(enum.Enum):
    SIGMA = "sigma"
    TAU = "tau"


class Letter(enum.IntEnum):
    """The four letters, numbered in the fixed enumeration order."""

    SIGMA = 0
    SIGMA_INV = 1
    TAU = 2
    TAU_INV = 3

    @property
    def symbol(self) -> Symbol:
        return Symbol.SIGMA if self <= Letter.SIGMA_INV else Symbol.TAU

    @property
    def sign(self) -> int:
        return 1 if self in (Letter.SIGMA, Letter.TAU) else -1

    @property
    def inverse(self) -> "Letter":
        return _INVERSE[self]

    @property
    def ascii(self) -> str:
        return "sStT"[self]

    @classmethod
    def from_ascii(cls, ch: str) -> "Letter":
        try:
            return cls("sStT".index(ch))
        except ValueError:
            raise ValueError(f"unknown letter {ch!r}; expected one of s S t T") from None


_INVERSE = {
    Letter.SIGMA: Letter.SIGMA_INV,
    Letter.SIGMA_INV: Letter.SIGMA,
    Letter.TAU: Letter.TAU_INV,
    Letter.TAU_INV: Letter.TAU,
}

LETTERS: tuple[Letter, ...] = tuple(Letter)


class CosetLabel(enum.Enum):
    E = "e"
    SIGMA_POS = "sigma"
    SIGMA_NEG = "sigma_inv"
    TAU_POS = "tau"
    TAU_NEG = "tau_inv"


_LABEL_OF = {
    Letter.SIGMA: CosetLabel.SIGMA_POS,
    Letter.SIGMA_INV: CosetLabel.SIGMA_NEG,
    Letter.TAU: CosetLabel.TAU_POS,
    Letter.TAU_INV: CosetLabel.TAU_NEG,
}


def _cancel(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    # free reduction with a stack; one pass suffices
    stack: list[Letter] = []
    for letter in letters:
        letter = Letter(letter)
        if stack and stack[-1] is _INVERSE[letter]:
            stack.pop()
        else:
            stack.append(letter)
    return tuple(stack)


@dataclass(frozen=True, eq=True)
class Word:
    """A reduced word.  Construction reduces its input eagerly."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _cancel(self.letters))

    @classmethod
    def _trusted(cls, letters: tuple[Letter, ...]) -> "Word":
        # skips reduction; caller guarantees the tuple is already reduced
        w = object.__new__(cls)
        object.__setattr__(w, "letters", letters)
        return w

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ASCII (``s S t T``) or Unicode (``σ σ⁻¹ τ τ⁻¹``) notation.

        Whitespace and commas are ignored; ``e`` or an empty string is the
        identity.
        """
        text = (text.replace("σ⁻¹", "S").replace("τ⁻¹", "T")
                    .replace("σ", "s").replace("τ", "t"))
        letters = []
        for ch in text:
            if ch in " ,\t\n" or ch == "e":
                continue
            letters.append(Letter.from_ascii(ch))
        return cls(tuple(letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __mul__(self, other: "Word") -> "Word":
        return concat(self, other)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Key realising the enumeration order: length first, then letters."""
        return len(self.letters), tuple(int(x) for x in self.letters)

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def to_ascii(self) -> str:
        return "".join(x.ascii for x in self.letters) or "e"

    def __str__(self) -> str:
        return self.to_ascii()

    def __repr__(self) -> str:
        return f"Word({self.to_ascii()!r})"


EMPTY = Word()


def reduce(raw: Sequence[Letter]) -> Word:
    return Word(tuple(raw))


def concat(w1: Word, w2: Word) -> Word:
    a, b = w1.letters, w2.letters
    i = 0
    n = min(len(a), len(b))
    while i < n and a[-1 - i] is _INVERSE[b[i]]:
        i += 1
    return Word._trusted(a[: len(a) - i] + b[i:])


def invert(w: Word) -> Word:
    return Word._trusted(tuple(_INVERSE[x] for x in reversed(w.letters)))


def letter_word(letter: Letter) -> Word:
    return Word._trusted((Letter(letter),))


def words_of_length(n: int) -> Iterator[Word]:
    """All reduced words of length exactly ``n`` in lexicographic order."""
    if n == 0:
        yield EMPTY
        return
    level: list[tuple[Letter, ...]] = [(x,) for x in LETTERS]
    for _ in range(n - 1):
        level = [w + (x,) for w in level for x in LETTERS if x is not _INVERSE[w[-1]]]
    for w in level:
        yield Word._trusted(w)


def enumerate_reduced(max_len: int, prefix: Word = EMPTY) -> Iterator[Word]:
    """Every reduced word of length <= ``max_len``, length-major then lex.

    With a non-empty ``prefix`` only the words that begin with it (as a
    reduced word, no cancellation against it) are produced, in the same
    relative order.  Splitting by the four one-letter prefixes and merging
    by :meth:`Word.sort_key` reproduces the full stream.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    p = prefix.letters
    if len(p) > max_len:
        return
    level: list[tuple[Letter, ...]] = [p]
    yield Word._trusted(p)
    for _ in range(len(p), max_len):
        if not level[0]:
            level = [(x,) for x in LETTERS]
        else:
            level = [w + (x,) for w in level for x in LETTERS if x is not _INVERSE[w[-1]]]
        yield from (Word._trusted(w) for w in level)


def count_reduced(length: int) -> int:
    """Number of reduced words of length exactly ``length``."""
    return 1 if length == 0 else 4 * 3 ** (length - 1)


def leading_coset(w: Word) -> CosetLabel:
    if not w.letters:
        return CosetLabel.E
    return _LABEL_OF[w.letters[0]]


def label_of_letter(letter: Letter) -> CosetLabel:
    return _LABEL_OF[Letter(letter)]


@dataclass
class F2ParadoxReport:
    max_len: int
    words_checked: int
    passed: bool
    checks: dict[str, bool]
    counterexample: Word | None = None
    reason: str = ""

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"f2-paradox L={self.max_len}: {status} over {self.words_checked} words"
        if not self.passed:
            text += f"; {self.reason}; counterexample {self.counterexample}"
        return text


def _shift_check(generator: Letter, by_len: dict[int, list[Word]], max_len: int):
    """Truncated form of ``G = g^-1 G_g  U  G_{g^-1}`` for one generator.

    Returns ``None`` when it holds, else ``(reason, word)``.
    """
    g = letter_word(generator)
    g_inv = letter_word(generator.inverse)
    own = label_of_letter(generator)
    opposite = label_of_letter(generator.inverse)

    target = {w for n in range(1, max_len + 1) for w in by_len[n] if leading_coset(w) is own}
    images: set[Word] = set()
    for n in range(max_len):
        for w in by_len[n]:
            if leading_coset(w) is opposite:
                continue
            u = concat(g, w)
            if leading_coset(u) is not own or len(u) > max_len:
                return f"{g}*w leaves G_{generator.name}", w
            if u in images:
                return "shift map not injective", w
            images.add(u)
    if images != target:
        return f"shift image differs from G_{generator.name} on the truncation", min(target ^ images)

    # the other direction: stripping g from G_g recovers everything except G_{g^-1}
    stripped = {concat(g_inv, u) for u in target}
    rest = {w for n in range(max_len) for w in by_len[n] if leading_coset(w) is opposite}
    shorter = {w for n in range(max_len) for w in by_len[n]}
    if stripped & rest:
        return "stripped set meets the inverse coset", min(stripped & rest)
    if stripped | rest != shorter:
        return "stripped set and inverse coset do not cover the truncation", min(shorter - (stripped | rest))
    return None


def verify_f2_paradox(max_len: int) -> F2ParadoxReport:
    """Check the coset partition and both shift identities on ``W_L``."""
    if max_len < 2:
        raise ValueError("max_len must be at least 2")
    by_len = {n: list(words_of_length(n)) for n in range(max_len + 1)}
    total = sum(len(v) for v in by_len.values())
    checks: dict[str, bool] = {}

    seen: dict[CosetLabel, int] = {label: 0 for label in CosetLabel}
    bad = None
    for n, ws in by_len.items():
        for w in ws:
            label = leading_coset(w)
            seen[label] += 1
            if (label is CosetLabel.E) != (n == 0):
                bad = w
    checks["partition"] = bad is None and sum(seen.values()) == total
    if not checks["partition"]:
        return F2ParadoxReport(max_len, total, False, checks, bad, "coset labels do not partition")

    for name, gen in (("sigma_shift", Letter.SIGMA), ("tau_shift", Letter.TAU)):
        failure = _shift_check(gen, by_len, max_len)
        checks[name] = failure is None
        if failure is not None:
            return F2ParadoxReport(max_len, total, False, checks, failure[1], failure[0])
    return F2ParadoxReport(max_len, total, True, checks)
