import itertools
import re

import pytest
from hypothesis import given, strategies as st

from paradoxkit.words import (
    EMPTY,
    CosetLabel,
    Letter,
    Word,
    concat,
    count_reduced,
    enumerate_reduced,
    invert,
    leading_coset,
    verify_f2_paradox,
    words_of_length,
)

letters = st.lists(st.sampled_from(list(Letter)), max_size=40)


def naive_reduce(text):
    # repeated deletion of adjacent inverse pairs, on the ASCII form
    pat = re.compile("sS|Ss|tT|Tt")
    while True:
        new = pat.sub("", text, count=1)
        if new == text:
            return text
        text = new


def ascii_of(ls):
    return "".join(x.ascii for x in ls)


def test_parse_single_cancellation():
    assert Word.parse("sSt").to_ascii() == "t"
    assert Word.parse("s S t").to_ascii() == "t"
    assert Word.parse("σσ⁻¹τ") == Word.parse("t")


def test_parse_identity_forms():
    assert Word.parse("") == EMPTY
    assert Word.parse("e") == EMPTY
    assert Word.parse("sStT") == EMPTY
    assert EMPTY.to_ascii() == "e"


def test_parse_rejects_unknown_letter():
    with pytest.raises(ValueError):
        Word.parse("sx")


def test_nested_cancellation():
    assert Word.parse("stTS").to_ascii() == "e"
    assert Word.parse("ttsSTt").to_ascii() == "tt"


def test_unicode_and_ascii_agree():
    assert Word.parse("τ⁻¹σσ") == Word.parse("Tss")


@given(letters)
def test_reduce_matches_naive_rewriting(ls):
    assert Word(tuple(ls)).to_ascii() == (naive_reduce(ascii_of(ls)) or "e")


@given(letters)
def test_reduce_idempotent(ls):
    w = Word(tuple(ls))
    assert Word(w.letters) == w


@given(letters, letters, letters)
def test_concat_associative(a, b, c):
    x, y, z = Word(tuple(a)), Word(tuple(b)), Word(tuple(c))
    assert concat(concat(x, y), z) == concat(x, concat(y, z))


@given(letters, letters)
def test_concat_matches_reducing_the_join(a, b):
    assert concat(Word(tuple(a)), Word(tuple(b))) == Word(tuple(a) + tuple(b))


@given(letters)
def test_inverse_laws(ls):
    w = Word(tuple(ls))
    assert invert(invert(w)) == w
    assert w * invert(w) == EMPTY
    assert invert(w) * w == EMPTY


def test_words_of_length_one_order():
    assert [w.to_ascii() for w in words_of_length(1)] == ["s", "S", "t", "T"]


def test_words_of_length_two_order():
    got = [w.to_ascii() for w in words_of_length(2)]
    assert got == ["ss", "st", "sT", "SS", "St", "ST", "ts", "tS", "tt", "Ts", "TS", "TT"]


@pytest.mark.parametrize("n", range(0, 8))
def test_counts_match_brute_force(n):
    brute = {naive_reduce("".join(p)) for p in itertools.product("sStT", repeat=n)}
    exact = [w for w in brute if len(w) == n]
    assert len(list(words_of_length(n))) == len(exact) == count_reduced(n)


def test_enumeration_is_sorted_and_distinct():
    ws = list(enumerate_reduced(6))
    assert ws == sorted(ws)
    assert len(set(ws)) == len(ws) == sum(count_reduced(n) for n in range(7))


def test_enumeration_total_at_ten():
    # 1 + 4(3^10 - 1)/2
    assert sum(1 for _ in enumerate_reduced(10)) == 1 + 2 * (3 ** 10 - 1) == 118097


def test_prefix_split_merges_to_full_stream():
    full = list(enumerate_reduced(5))
    parts = [list(enumerate_reduced(5, Word((x,)))) for x in Letter]
    merged = sorted([EMPTY] + [w for p in parts for w in p])
    assert merged == full
    assert all(w.letters[0] is x for p, x in zip(parts, Letter) for w in p)


def test_enumerate_rejects_negative():
    with pytest.raises(ValueError):
        list(enumerate_reduced(-1))


def test_leading_coset():
    assert leading_coset(EMPTY) is CosetLabel.E
    assert leading_coset(Word.parse("sT")) is CosetLabel.SIGMA_POS
    assert leading_coset(Word.parse("S")) is CosetLabel.SIGMA_NEG
    assert leading_coset(Word.parse("tss")) is CosetLabel.TAU_POS
    assert leading_coset(Word.parse("T")) is CosetLabel.TAU_NEG


def test_cosets_partition_truncation():
    counts = {label: 0 for label in CosetLabel}
    for w in enumerate_reduced(5):
        counts[leading_coset(w)] += 1
    assert counts[CosetLabel.E] == 1
    assert len({counts[c] for c in CosetLabel if c is not CosetLabel.E}) == 1
    assert sum(counts.values()) == sum(count_reduced(n) for n in range(6))


@pytest.mark.parametrize("L", [2, 3, 6])
def test_f2_paradox_small(L):
    r = verify_f2_paradox(L)
    assert r.passed, r.summary()
    assert r.checks == {"partition": True, "sigma_shift": True, "tau_shift": True}
    assert r.words_checked == sum(count_reduced(n) for n in range(L + 1))


def test_f2_paradox_rejects_tiny_cutoff():
    with pytest.raises(ValueError):
        verify_f2_paradox(1)


def test_shift_identity_by_hand():
    # s * (words not starting with S) == words starting with s, at one length less
    L = 4
    rest = [w for w in enumerate_reduced(L - 1) if not (len(w) and w.letters[0] is Letter.SIGMA_INV)]
    led = {w for w in enumerate_reduced(L) if len(w) and w.letters[0] is Letter.SIGMA}
    assert {Word.parse("s") * w for w in rest} == led
