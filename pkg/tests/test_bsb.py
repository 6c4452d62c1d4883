import random

import pytest
from hypothesis import given, settings, strategies as st

from paradoxkit.equidecomp import (
    Affine,
    Ancestry,
    FiniteSet,
    IntRegion,
    IntSet,
    Parity,
    Permutation,
    bsb_combine,
    classify,
    compose_piecewise,
    make_piecewise,
    verify_bijection,
)
from paradoxkit.errors import EquidecompError

N = IntRegion.naturals()


def affine_map(u, v, domain=N):
    return make_piecewise(domain, [(domain, Affine.uvd(u, v))])


def naive_ancestors(a, f, g, cap=10_000):
    # f(n) = f_u n + f_v, g likewise, both on all of N; count backward steps
    (fu, fv), (gu, gv) = f, g
    x, side, count, seen = a, "A", 0, set()
    while (x, side) not in seen and count < cap:
        seen.add((x, side))
        u, v = (gu, gv) if side == "A" else (fu, fv)
        if x < v or (x - v) % u:
            return count
        x, side, count = (x - v) // u, ("B" if side == "A" else "A"), count + 1
    return None


def test_successor_pair_transposes():
    f, g = affine_map(1, 1), affine_map(1, 1)
    h = bsb_combine(f, g)
    assert all(h(n) == (n + 1 if n % 2 == 0 else n - 1) for n in range(1001))
    assert verify_bijection(h, N, N, window=1001).passed


def test_successor_chain_lengths():
    anc = Ancestry(affine_map(1, 1), affine_map(1, 1))
    for a in range(64):
        assert naive_ancestors(a, (1, 1), (1, 1)) == a
        assert anc.parity(a) is (Parity.ODD if a % 2 else Parity.EVEN)


def test_doubling_pair():
    f, g = affine_map(2, 0), affine_map(2, 1)
    h = bsb_combine(f, g)
    assert (h(0), h(1), h(3)) == (0, 2, 1)
    anc = Ancestry(f, g)
    assert [naive_ancestors(a, (2, 0), (2, 1)) for a in (0, 1, 3)] == [0, 2, 1]
    assert [anc.parity(a) for a in (0, 1, 3)] == [Parity.EVEN, Parity.EVEN, Parity.ODD]
    expect = {}
    for n in range(1001):
        k = naive_ancestors(n, (2, 0), (2, 1))
        expect[n] = (n - 1) // 2 if k % 2 else 2 * n
    assert all(h(n) == expect[n] for n in range(1001))
    assert verify_bijection(h, N, N, window=1001).passed


def test_parity_classes_partition_truncation():
    f, g = affine_map(2, 0), affine_map(3, 1)
    anc = Ancestry(f, g)
    classes = classify(anc, range(500))
    assert sorted(x for xs in classes.values() for x in xs) == list(range(500))
    for a in range(500):
        k = naive_ancestors(a, (2, 0), (3, 1))
        want = Parity.INFINITE if k is None else (Parity.ODD if k % 2 else Parity.EVEN)
        assert anc.parity(a) is want


def test_identity_pair_is_all_infinite():
    f, g = affine_map(1, 0), affine_map(1, 0)
    anc = Ancestry(f, g)
    assert all(anc.parity(n) is Parity.INFINITE for n in range(50))
    h = bsb_combine(f, g)
    assert all(h(n) == n for n in range(200))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.integers(0, 3), st.integers(1, 3), st.integers(0, 3))
def test_random_affine_pairs_give_bijections(fu, fv, gu, gv):
    f, g = affine_map(fu, fv), affine_map(gu, gv)
    h = bsb_combine(f, g)
    r = verify_bijection(h, N, N, window=300)
    assert r.passed, r.summary()
    anc = Ancestry(f, g)
    for n in range(300):
        want = g.pieces[0].motion.inverse()(n) if anc.is_odd(n) else f(n)
        assert h(n) == want


def test_bsb_between_different_sets():
    # A = N, B = evens; f doubles, g is the inclusion of evens in N
    B = IntRegion.of(IntSet.progression(0, 2))
    f = affine_map(2, 0)
    g = make_piecewise(B, [(B, Affine())])
    h = bsb_combine(f, g, B)
    r = verify_bijection(h, N, B, window=1001)
    assert r.passed, r.summary()


def test_downward_piece_rejected():
    A = IntRegion.of(IntSet.progression(5))
    f = make_piecewise(A, [(A, Affine.shift(-5))])
    g = affine_map(1, 5)
    with pytest.raises(EquidecompError) as ei:
        bsb_combine(f, g)
    assert ei.value.code == "NONTERMINATING_ANCESTRY"


def test_verify_bijection_catches_failures():
    f = affine_map(2, 0)
    r = verify_bijection(f, N, N, window=50)
    assert not r.passed and r.witness == 1


def random_finite_instance(rng):
    n = rng.randint(1, 10)
    A = rng.sample(range(50), n)
    B = rng.sample(range(100, 150), n)
    fvals, gvals = B[:], A[:]
    rng.shuffle(fvals)
    rng.shuffle(gvals)

    def pieces(src, dst):
        by_shift = {}
        for x, y in zip(src, dst):
            by_shift.setdefault(y - x, set()).add(x)
        return [(blk, Affine.shift(d)) for d, blk in by_shift.items()]

    f = make_piecewise(FiniteSet(A), pieces(A, fvals))
    g = make_piecewise(FiniteSet(B), pieces(B, gvals))
    return FiniteSet(A), FiniteSet(B), f, g


def test_finite_bijections_are_all_infinite():
    rng = random.Random(7)
    A, B, f, g = random_finite_instance(rng)
    h = bsb_combine(f, g, B)
    anc = Ancestry(f, g)
    assert all(anc.parity(a) is Parity.INFINITE for a in A)
    assert all(h(a) == f(a) for a in A)


def test_500_random_finite_instances():
    rng = random.Random(2024)
    for _ in range(500):
        A, B, f, g = random_finite_instance(rng)
        h = bsb_combine(f, g, B)
        assert verify_bijection(h, A, B).passed
        hg = compose_piecewise(h, g)
        assert len(hg) <= len(h) * len(g)
        assert all(hg(a) == g(h(a)) for a in A)


def test_finite_labels_with_permutations():
    A = FiniteSet("abcd")
    f = make_piecewise(A, [({"a", "b"}, Permutation({"a": "b", "b": "a"})), ({"c", "d"}, Permutation())])
    g = make_piecewise(A, [(A, Permutation({"a": "c", "c": "a"}))])
    h = bsb_combine(f, g, A)
    assert verify_bijection(h, A, A).passed
    assert [h(x) for x in "abcd"] == [f(x) for x in "abcd"]
