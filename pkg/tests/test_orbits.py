import csv
import io
import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from paradoxkit.equidecomp import FiniteSet, RigidMotion, make_piecewise
from paradoxkit.errors import OrbitError
from paradoxkit.orbits import (
    QUARTER_TURN_X,
    BallPoint,
    OffsetRotation,
    center_absorption_demo,
    check_distinct,
    cone_extend,
    hausdorff_lift_sample,
    orbit_segment,
    pole_check,
    sphere_point,
    truncated_absorption_check,
    z_rotation,
)
from paradoxkit.rotations import PYTHAGOREAN_345 as T, ScaledVec, apply_word
from paradoxkit.words import Letter, Word, concat, count_reduced, invert

SIGMA = Word.parse("s")
E2 = ScaledVec((0, 1, 0), 0, 5)
E3 = ScaledVec((0, 0, 1), 0, 5)
words = st.lists(st.sampled_from(list(Letter)), max_size=8).map(lambda ls: Word(tuple(ls)))


def frac_sigma(x):
    # sigma as an exact rational rotation about the x-axis, built by hand
    c, s = Fraction(4, 5), Fraction(3, 5)
    return (x[0], c * x[1] - s * x[2], s * x[1] + c * x[2])


def test_sigma_orbit_first_points():
    pts = orbit_segment(SIGMA, E2, 2)
    assert pts == [E2, ScaledVec((0, 4, 3), 1, 5), ScaledVec((0, 7, 24), 2, 5)]
    assert [p.as_fractions() for p in pts] == [
        (0, 1, 0), (0, Fraction(4, 5), Fraction(3, 5)), (0, Fraction(7, 25), Fraction(24, 25))
    ]


def test_orbit_length_zero():
    assert orbit_segment(SIGMA, E2, 0) == [E2]


def test_orbit_matches_fraction_oracle():
    pts = orbit_segment(SIGMA, E2, 40)
    x = (Fraction(0), Fraction(1), Fraction(0))
    for p in pts:
        assert p.as_fractions() == x
        x = frac_sigma(x)


def test_orbit_exponents_and_residues():
    pts = orbit_segment(SIGMA, E2, 300)
    r = (0, 4, 3)  # propagated mod 5 under s+ mod 5
    for n, p in enumerate(pts[1:], start=1):
        q = p.normalized()
        assert q.n == n
        assert tuple(x % 5 for x in q.v) == r
        r = (0, (4 * r[1] - 3 * r[2]) % 5, (3 * r[1] + 4 * r[2]) % 5)


def test_distinct_examples():
    assert check_distinct(orbit_segment(SIGMA, E2, 300))
    assert check_distinct([E2])
    r = check_distinct(orbit_segment(QUARTER_TURN_X, (0, 1, 0), 4))
    assert not r and r.collision == (0, 4)


def test_absorption_sigma():
    r = truncated_absorption_check(SIGMA, [E2], 50)
    assert r.passed and r.points == 52


def test_absorption_empty_set():
    assert truncated_absorption_check(SIGMA, [], 10).passed


def test_absorption_quarter_turn_fails():
    r = truncated_absorption_check(QUARTER_TURN_X, [(0, 1, 0)], 5)
    assert not r.passed and r.collision == (0, 4)


def test_absorption_axis_point():
    with pytest.raises(OrbitError) as ei:
        truncated_absorption_check(SIGMA, [ScaledVec((1, 0, 0), 0, 5)], 3)
    assert ei.value.code == "AXIS_POINT"


def test_absorption_identity_every_truncation():
    for k in range(1, 20):
        assert truncated_absorption_check(SIGMA, [E2, E3], k).passed


def test_pole_examples():
    assert pole_check(SIGMA, ScaledVec((1, 0, 0), 0, 5), T)
    assert not pole_check(SIGMA, E3, T)
    assert pole_check(Word.parse("stS"), ScaledVec((0, 4, 3), 1, 5), T)
    with pytest.raises(OrbitError):
        pole_check(Word(), E3, T)


@settings(max_examples=50)
@given(words)
def test_conjugated_pole_law(w):
    p = apply_word(w, ScaledVec((1, 0, 0), 0, 5), T)
    conj = concat(concat(w, SIGMA), invert(w))
    if len(conj):
        assert pole_check(conj, p, T)


def test_lift_single_seed():
    s = hausdorff_lift_sample(T, [E3], 3)
    assert sum(len(p) for p in s.points) == 53
    assert s.classes[0][Word()] == "E"
    assert s.classes[0][Word.parse("t")] == "Z"
    assert s.points[0][Word.parse("t")] == sphere_point((Fraction(3, 5), 0, Fraction(4, 5)), 5)
    assert s.passed


def test_lift_counts_by_class():
    s = hausdorff_lift_sample(T, [E3], 4)
    counts = {c: list(s.classes[0].values()).count(c) for c in "YZE"}
    half = sum(count_reduced(n) for n in range(1, 5)) // 2
    assert counts == {"Y": half, "Z": half, "E": 1}


def test_lift_points_on_sphere():
    s = hausdorff_lift_sample(T, [E3, ScaledVec((0, 3, 4), 1, 5)], 4)
    assert all(p.is_unit() for pts in s.points for p in pts.values())


@pytest.mark.parametrize("seed", [(1, 0, 0), (0, 1, 0)])
def test_lift_pole_seed_rejected(seed):
    # the coordinate axes are the rotation axes of sigma and tau
    with pytest.raises(OrbitError) as ei:
        hausdorff_lift_sample(T, [ScaledVec(seed, 0, 5)], 2)
    assert ei.value.code == "POLE_SEED"


def test_lift_rejects_off_sphere_seed():
    with pytest.raises(OrbitError):
        hausdorff_lift_sample(T, [ScaledVec((1, 1, 0), 0, 5)], 2)


def test_lift_overlapping_orbits_recorded():
    tau_e3 = ScaledVec((3, 0, 4), 1, 5)
    s = hausdorff_lift_sample(T, [E3, tau_e3], 3)
    assert s.yz_disjoint and s.passed
    assert (0, "t", 1, "e") in s.overlaps
    for j, wj, i, wi in s.overlaps:
        assert {s.classes[j][Word.parse(wj)], s.classes[i][Word.parse(wi)]} != {"Y", "Z"}


def test_lift_csv_format():
    s = hausdorff_lift_sample(T, [E3], 2)
    rows = list(csv.reader(io.StringIO(s.to_csv())))
    assert rows[0] == ["seed_id", "word", "class", "x_num", "y_num", "z_num", "exp"]
    assert rows[1] == ["0", "e", "E", "0", "0", "1", "0"]
    assert rows[2] == ["0", "s", "Y", "0", "-3", "4", "1"]
    assert len(rows) == 1 + 17


def test_lift_csv_thread_stable():
    seeds = [E3, ScaledVec((3, 0, 4), 1, 5), ScaledVec((0, 3, 4), 1, 5)]
    a = hausdorff_lift_sample(T, seeds, 3).to_csv()
    b = hausdorff_lift_sample(T, seeds, 3, threads=3).to_csv()
    assert a == b


def test_lift_json_structure():
    doc = json.loads(hausdorff_lift_sample(T, [E3], 2).to_json())
    assert doc["verdict"] == "PASS" and doc["cutoff"] == 2
    assert doc["points"][0] == {"seed_id": 0, "word": "e", "class": "E", "v": [0, 0, 1], "exp": 0}
    assert doc["checks"]["shift_identity"] == [{"s": True, "t": True}]


def test_cone_sigma_half_radius():
    out = cone_extend(SIGMA, [BallPoint(E2, Fraction(1, 2))], T)
    assert out == [BallPoint(ScaledVec((0, 4, 3), 1, 5), Fraction(1, 2))]
    assert out[0].cartesian() == (0, Fraction(2, 5), Fraction(3, 10))


def test_cone_at_unit_radius_is_sphere_map():
    out = cone_extend(SIGMA, [BallPoint(E3, 1)], T)
    assert out[0].u == apply_word(SIGMA, E3, T) and out[0].t == 1


@settings(max_examples=100)
@given(words, words, st.fractions(min_value=Fraction(1, 1000), max_value=1))
def test_cone_radius_preserved_and_compatible(w, f, t):
    if t <= 0:
        return
    u = apply_word(w, E3, T)
    p = BallPoint(u, t)
    (once,) = cone_extend(f, [p], T)
    assert once.t == t
    g = Word.parse("tS")
    (left,) = cone_extend(concat(f, g), [p], T)
    (right,) = cone_extend(f, cone_extend(g, [p], T), T)
    assert left == right


def test_cone_with_piecewise_map():
    a, b = (Fraction(0), Fraction(0), Fraction(1)), (Fraction(0), Fraction(1), Fraction(0))
    quarter = ((1, 0, 0), (0, 0, -1), (0, 1, 0))
    pm = make_piecewise(FiniteSet({a, b}), [({a, b}, RigidMotion(quarter))])
    out = cone_extend(pm, [BallPoint(E2, Fraction(1, 3))])
    assert out[0].u.as_fractions() == (0, 0, 1)
    with pytest.raises(OrbitError):
        cone_extend(pm, [BallPoint(ScaledVec((3, 0, 4), 1, 5), 1)])


def test_ball_point_validation():
    with pytest.raises(OrbitError):
        BallPoint(E3, 0)
    with pytest.raises(OrbitError):
        BallPoint(E3, Fraction(3, 2))


def test_center_demo_first_iterate():
    r = center_absorption_demo(T, 60)
    assert r.first_iterate == (Fraction(1, 15), Fraction(-1, 5), 0)
    assert r.passed and r.within_two_thirds
    assert r.max_norm2 <= Fraction(4, 9)


def test_center_orbit_on_circle():
    rho = OffsetRotation(z_rotation(T), (Fraction(1, 3), 0, 0))
    for x in orbit_segment(rho, (0, 0, 0), 100):
        assert (x[0] - Fraction(1, 3)) ** 2 + x[1] ** 2 == Fraction(1, 9) and x[2] == 0


def test_center_axis_through_origin():
    rho = OffsetRotation(z_rotation(T))
    with pytest.raises(OrbitError) as ei:
        truncated_absorption_check(rho, [(0, 0, 0)], 5)
    assert ei.value.code == "AXIS_POINT"


def test_offset_rotation_validation():
    with pytest.raises(OrbitError):
        OffsetRotation(((2, 0, 0), (0, 1, 0), (0, 0, 1)))
