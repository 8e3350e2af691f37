from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from twistconj import rational as qa
from twistconj.alcove import build_alcove, su_chart, su_unchart
from twistconj.integral import (comark_count, congruence_system, enumerate_integral, is_integral,
                                orbit_shift, orbit_unshift, rho_and_dual_coxeter, weight_labels)

from conftest import folded


def test_a1_integrality():
    fs = folded("A1")
    assert is_integral(fs, [F(1, 4)], 2)
    assert not is_integral(fs, [F(1, 4)], 1)
    assert not is_integral(fs, [F(1, 4)], F(3, 2))
    with pytest.raises(ValueError):
        is_integral(fs, [0], 0)


def test_a2_twisted_integrality():
    fs = folded("A2", 2)
    assert not is_integral(fs, su_unchart(fs, [0]), 1)
    assert is_integral(fs, su_unchart(fs, [F(1, 4)]), 1)


def test_a1_level_three():
    fs = folded("A1")
    pts = [c.point.coords[0] for c in enumerate_integral(fs, 3)]
    assert pts == [0, F(1, 6), F(1, 3), F(1, 2)]


def test_a2_twisted_points():
    fs = folded("A2", 2)
    assert [su_chart(fs, c.point.coords) for c in enumerate_integral(fs, 1)] == [(F(1, 4),)]
    assert [su_chart(fs, c.point.coords) for c in enumerate_integral(fs, 2)] == [(0,), (F(1, 4),)]


def test_a2_twisted_congruences_by_hand():
    # 4ax and 2ax + a/2 integral, scanned on a fine grid of [0, 1/4]
    fs = folded("A2", 2)
    for a in range(1, 9):
        grid = [F(k, 8 * a) for k in range(2 * a + 1)]
        hand = [x for x in grid if qa.is_integer(4 * a * x) and qa.is_integer(2 * a * x + F(a, 2))]
        got = [su_chart(fs, c.point.coords)[0] for c in enumerate_integral(fs, a)]
        assert got == hand
        assert len(got) == a // 2 + 1


def test_level_validation():
    fs = folded("A1")
    for bad in (0, -1, 2.0):
        with pytest.raises(ValueError):
            enumerate_integral(fs, bad)


def test_labels():
    fs = folded("A1")
    assert weight_labels(fs, [0], 3) == (3, 0)
    assert weight_labels(fs, [F(1, 4)], 2) == (1, 1)
    fs2 = folded("A2", 2)
    labels = [c.labels for c in enumerate_integral(fs2, 2)]
    assert labels == [(1, 0), (0, 2)]
    assert all(sum(c * m for c, m in zip(fs2.comarks, lab)) == 2 for lab in labels)
    with pytest.raises(ValueError):
        weight_labels(fs, [F(1, 5)], 1)


def test_level_one_counts_are_center_orders():
    for name, order in [("A1", 2), ("A2", 3), ("A3", 4), ("A4", 5), ("A5", 6), ("D4", 4), ("D5", 4), ("E6", 3)]:
        assert len(enumerate_integral(folded(name), 1)) == order


@pytest.mark.parametrize("name,order", [("A1", 1), ("A2", 1), ("B2", 1), ("G2", 1), ("A3", 1), ("B3", 1),
                                        ("C3", 1), ("A2", 2), ("A3", 2), ("A4", 2), ("D4", 2), ("D4", 3)])
def test_enumeration_matches_comark_count(name, order):
    fs = folded(name, order)
    for a in range(1, 7):
        classes = enumerate_integral(fs, a)
        assert len(classes) == comark_count(fs.comarks, a)
        labels = [c.labels for c in classes]
        assert len(set(labels)) == len(labels)
        assert all(sum(c * m for c, m in zip(fs.comarks, lab)) == a for lab in labels)


@pytest.mark.parametrize("name,order", [("A2", 1), ("B2", 1), ("A3", 2), ("D4", 3)])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_integrality_sign_symmetry(name, order, data):
    fs = folded(name, order)
    cs = congruence_system(fs)
    h = data.draw(st.lists(st.fractions(min_value=-1, max_value=1, max_denominator=12),
                           min_size=fs.dim, max_size=fs.dim))
    a = data.draw(st.integers(1, 6))
    assert cs.holds(h, a) == cs.holds(h, -a)


def test_rho_and_dual_coxeter():
    assert rho_and_dual_coxeter(folded("A1")) == ((F(1, 2),), 2)
    assert rho_and_dual_coxeter(folded("A2", 2))[1] == 3
    assert rho_and_dual_coxeter(folded("B2"))[1] == 3
    assert rho_and_dual_coxeter(folded("E6"))[1] == 12


def test_orbit_shift():
    fs = folded("A1")
    point, level = orbit_shift(fs, [0], 1)
    assert (point.coords, level) == ((F(1, 6),), 3)
    fs2 = folded("A2", 2)
    al = build_alcove(fs2)
    point, level = orbit_shift(fs2, su_unchart(fs2, [F(1, 4)]), 1)
    assert level == 4 and al.contains(point.coords)
    with pytest.raises(ValueError):
        orbit_shift(fs, [0], 0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-1, max_value=1, max_denominator=10), min_size=2, max_size=2),
       st.integers(1, 5))
def test_shift_unshift_round_trip(h, a):
    fs = folded("B2")
    rho, hv = rho_and_dual_coxeter(fs)
    shifted = [(a * x + y) / (a + hv) for x, y in zip(h, rho)]
    assert list(orbit_unshift(fs, shifted, a)) == h
