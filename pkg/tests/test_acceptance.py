"""The nine acceptance criteria, one test each, at their stated sizes and time limits."""

import random
import time
from fractions import Fraction

from conftest import ACCEPTANCE_LINES

from paradoxkit.equidecomp import (
    Affine,
    FiniteSet,
    IntRegion,
    bsb_combine,
    compose_piecewise,
    invert_piecewise,
    make_piecewise,
    verify_bijection,
)
from paradoxkit.errors import TripleError
from paradoxkit.modular_cert import (
    Role,
    build_certificate,
    certificate_from_json,
    certificate_to_json,
    verify_certificate,
)
from paradoxkit.orbits import (
    QUARTER_TURN_X,
    center_absorption_demo,
    check_distinct,
    hausdorff_lift_sample,
    orbit_segment,
    truncated_absorption_check,
)
from paradoxkit.rotations import PYTHAGOREAN_345, GenKind, PythagoreanTriple, ScaledVec, brute_force_freeness
from paradoxkit.words import Letter, Word, count_reduced, invert, reduce, verify_f2_paradox

N = IntRegion.naturals()


def record(n, checks):
    """Print one PASS/FAIL line for criterion n, then assert each named check."""
    failed = [name for name, ok in checks.items() if not ok]
    line = f"criterion {n}: {'PASS' if not failed else 'FAIL'}"
    if failed:
        line += " (" + ", ".join(failed) + ")"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert not failed, line


def test_criterion_1_freeness_sweep():
    t0 = time.perf_counter()
    r = brute_force_freeness(PYTHAGOREAN_345, 8, ScaledVec((0, 0, 1), 0, 5), threads=1)
    elapsed = time.perf_counter() - t0
    record(1, {
        "no_identity_matrix": r.passed,
        "13120_words": r.words_checked == 13_120 == sum(count_reduced(n) for n in range(1, 9)),
        "residues_nonzero": r.residues_nonzero,
        "under_10s": elapsed < 10,
    })


def modspan(gen, c):
    return frozenset(tuple(x % c for x in gen(m, n)) for m in range(c) for n in range(c))


def test_criterion_2_certificate_table():
    cert = build_certificate(PYTHAGOREAN_345)
    table = {
        (GenKind.S_PLUS, Role.RANGE): lambda m, n: (0, 3 * m, m),
        (GenKind.S_PLUS, Role.KERNEL): lambda m, n: (m, n, 3 * n),
        (GenKind.S_MINUS, Role.RANGE): lambda m, n: (0, m, 3 * m),
        (GenKind.S_MINUS, Role.KERNEL): lambda m, n: (m, 3 * n, n),
        (GenKind.T_PLUS, Role.RANGE): lambda m, n: (m, 0, 3 * m),
        (GenKind.T_PLUS, Role.KERNEL): lambda m, n: (3 * m, n, m),
        (GenKind.T_MINUS, Role.RANGE): lambda m, n: (3 * m, 0, m),
        (GenKind.T_MINUS, Role.KERNEL): lambda m, n: (m, n, 3 * m),
    }
    checks = {}
    for (kind, role), gen in table.items():
        got = cert.range_of(kind) if role is Role.RANGE else cert.kernel_of(kind)
        checks[f"{kind.value}_{role.value}"] = got == modspan(gen, 5)
    checks["free"] = cert.verdict == "FREE"
    record(2, checks)


def brute_multipliers(t):
    ks = [k for k in range(t.c) if (k * t.a + t.b) % t.c == 0 and (k * t.b - t.a) % t.c == 0]
    mus = [u for u in range(t.c) if (u * t.a - t.b) % t.c == 0 and (u * t.b + t.a) % t.c == 0]
    return ks, mus


def test_criterion_3_generalization():
    t0 = time.perf_counter()
    checks = {}
    for triple in [(5, 12, 13), (8, 15, 17), (7, 24, 25), (20, 21, 29)]:
        t = PythagoreanTriple(*triple)
        cert = build_certificate(t)
        checks[f"{triple}_free"] = cert.verdict == "FREE"
        checks[f"{triple}_multipliers"] = brute_multipliers(t) == ([cert.multipliers.k], [cert.multipliers.mu])
    try:
        PythagoreanTriple(6, 8, 10)
        checks["reject_6_8_10"] = False
    except TripleError as exc:
        checks["reject_6_8_10"] = exc.code == "NON_PRIMITIVE"
    checks["under_5s"] = time.perf_counter() - t0 < 5
    record(3, checks)


def test_criterion_4_f2_paradox():
    r = verify_f2_paradox(10)
    record(4, {
        "passed": r.passed,
        "sigma_shift": r.checks.get("sigma_shift", False),
        "tau_shift": r.checks.get("tau_shift", False),
        "all_words": r.words_checked == sum(count_reduced(n) for n in range(11)) == 118_097,
    })


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

    return (FiniteSet(A), FiniteSet(B),
            make_piecewise(FiniteSet(A), pieces(A, fvals)), make_piecewise(FiniteSet(B), pieces(B, gvals)))


def test_criterion_5_bsb():
    succ = make_piecewise(N, [(N, Affine.shift(1))])
    h1 = bsb_combine(succ, succ)
    swap_ok = all(h1(n) == (n + 1 if n % 2 == 0 else n - 1) for n in range(1001))

    f, g = make_piecewise(N, [(N, Affine.uvd(2, 0))]), make_piecewise(N, [(N, Affine.uvd(2, 1))])
    h2 = bsb_combine(f, g)
    # independent ancestor count for the doubling pair
    def ancestors(a):
        x, side, k = a, "A", 0
        while True:
            u, v = (2, 1) if side == "A" else (2, 0)
            if x < v or (x - v) % u:
                return k
            x, side, k = (x - v) // u, "B" if side == "A" else "A", k + 1
    doubling_ok = all(h2(n) == ((n - 1) // 2 if ancestors(n) % 2 else 2 * n) for n in range(1001))
    bij = verify_bijection(h1, N, N, window=1001).passed and verify_bijection(h2, N, N, window=1001).passed

    rng = random.Random(2024)
    finite_ok = bound_ok = True
    for _ in range(500):
        A, B, f, g = random_finite_instance(rng)
        h = bsb_combine(f, g, B)
        finite_ok &= verify_bijection(h, A, B).passed
        hg = compose_piecewise(h, g)
        bound_ok &= len(hg) <= len(h) * len(g) and all(hg(a) == g(h(a)) for a in A)
    record(5, {"successor_pair": swap_ok, "doubling_pair": doubling_ok, "bijections_on_window": bij,
               "500_finite": finite_ok, "compose_bound": bound_ok})


def test_criterion_6_orbit_exactness():
    pts = orbit_segment(Word.parse("s"), ScaledVec((0, 1, 0), 0, 5), 2000)
    dist = check_distinct(pts)
    exps = all(p.normalized().n == n for n, p in enumerate(pts))
    ctrl = check_distinct(orbit_segment(QUARTER_TURN_X, (0, 1, 0), 8))
    record(6, {"distinct_2000": bool(dist) and len(pts) == 2001, "denominator_5^n": exps,
               "quarter_turn_period_4": not ctrl and ctrl.collision == (0, 4)})


def test_criterion_7_absorption():
    r = truncated_absorption_check(Word.parse("s"), [ScaledVec((0, 1, 0), 0, 5)], 50)
    demo = center_absorption_demo(PYTHAGOREAN_345, 500)
    record(7, {"sigma_N50": r.passed and r.identity_holds, "center_N500": demo.passed,
               "within_2/3": demo.within_two_thirds and demo.max_norm2 <= Fraction(4, 9)})


def test_criterion_8_lift_sample():
    seeds = [ScaledVec((0, 0, 1), 0, 5), ScaledVec((3, 0, 4), 1, 5)]
    s = hausdorff_lift_sample(PYTHAGOREAN_345, seeds, 5)
    injective = all(len(set(pts.values())) == len(pts) == sum(count_reduced(n) for n in range(6))
                    for pts in s.points)
    csv1 = s.to_csv()
    csv2 = hausdorff_lift_sample(PYTHAGOREAN_345, seeds, 5).to_csv()
    csv3 = hausdorff_lift_sample(PYTHAGOREAN_345, seeds, 5, threads=2).to_csv()
    record(8, {"injective": injective, "yz_disjoint": s.yz_disjoint,
               "shift_identity": all(all(d.values()) for d in s.shift_identity), "passed": s.passed,
               "csv_stable": csv1 == csv2 == csv3})


def test_criterion_9_round_trips():
    cert_ok = True
    for triple in [(3, 4, 5), (5, 12, 13), (8, 15, 17)]:
        text = certificate_to_json(build_certificate(PythagoreanTriple(*triple)))
        again = certificate_from_json(text)
        cert_ok &= certificate_to_json(again) == text and verify_certificate(again).free
        cert_ok &= certificate_to_json(certificate_from_json(certificate_to_json(again))) == text

    rng = random.Random(99)
    letters = list(Letter)
    word_ok = True
    for _ in range(10_000):
        raw = [rng.choice(letters) for _ in range(rng.randint(0, 24))]
        w = reduce(raw)
        word_ok &= reduce(list(w)) == w and invert(invert(w)) == w and len(invert(w)) == len(w)

    map_ok = True
    for _ in range(10_000):
        A, _, f, _ = random_finite_instance(rng)
        ff = invert_piecewise(invert_piecewise(f))
        map_ok &= all(ff(a) == f(a) for a in A)
    record(9, {"certificate_json": cert_ok, "word_invert_reduce": word_ok, "map_invert_invert": map_ok})
