from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from twistconj import rational as qa
from twistconj.folding import (DiagramAutomorphism, canonical_outer, diagram_automorphisms, fold,
                               is_automorphism)
from twistconj.rootsys import build_root_system, is_finite_type

from conftest import folded

CASES = [("A1", 1), ("A2", 1), ("A3", 1), ("B2", 1), ("G2", 1), ("F4", 1), ("D4", 1), ("E6", 1),
         ("A2", 2), ("A3", 2), ("A4", 2), ("A5", 2), ("D4", 2), ("D4", 3), ("D5", 2), ("E6", 2)]


@pytest.mark.parametrize("name,count", [("A1", 1), ("A2", 2), ("A5", 2), ("B3", 1), ("D4", 6),
                                        ("D5", 2), ("E6", 2), ("E7", 1), ("F4", 1)])
def test_automorphism_counts(name, count):
    autos = diagram_automorphisms(build_root_system(name))
    assert len(autos) == count
    assert autos[0].is_identity


def test_invalid_twist_rejected():
    rs = build_root_system("B3")
    assert not is_automorphism(rs, (2, 1, 0))
    with pytest.raises(ValueError):
        fold(rs, DiagramAutomorphism((2, 1, 0)))


@pytest.mark.parametrize("name,order,g0,comarks,component", [
    ("A2", 2, "A1", (2, 1), [2]),
    ("A3", 2, "B2", (1, 1, 2), [2]),
    ("A4", 2, "B2", (2, 2, 1), [2, 2]),
    ("D4", 3, "G2", (1, 2, 3), [3]),
    ("B2", 1, "B2", (1, 1, 1), []),
    ("A3", 1, "A3", (1, 1, 1, 1), []),
    ("E6", 2, "F4", None, None),
])
def test_folded_data(name, order, g0, comarks, component):
    fs = folded(name, order)
    assert str(fs.g0.type) == g0
    if comarks is not None:
        assert fs.comarks == comarks
        assert fs.component_group() == component


@pytest.mark.parametrize("name,order", CASES)
def test_eigenspace_dimensions_add_up(name, order):
    fs = folded(name, order)
    total = sum(sum(fs.gk_weights(k).values()) for k in range(fs.r))
    assert total == fs.base.dimension
    zero = tuple(Fraction(0) for _ in range(fs.dim))
    assert fs.gk_weights(0)[zero] == fs.dim
    assert sum(fs.gk_weights(0).values()) == fs.g0.dimension


def test_triality_eigenspaces():
    fs = folded("D4", 3)
    assert [sum(fs.gk_weights(k).values()) for k in range(3)] == [14, 7, 7]


def test_both_triality_cycles_agree():
    rs = build_root_system("D4")
    cycles = [a for a in diagram_automorphisms(rs) if a.order == 3]
    assert len(cycles) == 2
    data = {(tuple(fold(rs, t).comarks), str(fold(rs, t).g0.type)) for t in cycles}
    assert data == {((1, 2, 3), "G2")}


@pytest.mark.parametrize("name,order", CASES)
def test_affine_cartan_corank_one(name, order):
    fs = folded(name, order)
    a = fs.affine_cartan
    assert qa.rank(a) == fs.dim
    assert all(a[i][i] == 2 for i in range(len(a)))
    for drop in range(len(a)):
        keep = [i for i in range(len(a)) if i != drop]
        minor = [[a[i][j] for j in keep] for i in keep]
        assert is_finite_type(minor)


@pytest.mark.parametrize("name,order", CASES)
def test_comarks_positive_primitive(name, order):
    fs = folded(name, order)
    c = fs.comarks
    assert min(c) > 0
    assert qa.primitive_integer(list(c)) == list(c)
    assert all(sum(ci * row[j] for ci, row in zip(c, fs.affine_cartan)) == 0 for j in range(len(c)))


@pytest.mark.parametrize("name,order", CASES)
def test_component_group_trivial_untwisted(name, order):
    fs = folded(name, order)
    if order == 1:
        assert fs.component_group() == []


@pytest.mark.parametrize("name,order", CASES)
def test_theta_tau_closes_alcove(name, order):
    fs = folded(name, order)
    # theta_tau is a positive combination of the simple restricted roots
    coeffs = qa.solve(qa.transpose([list(x) for x in fs.restricted_simple]), list(fs.theta_tau))
    assert all(x > 0 for x in coeffs)


def _vectors(n):
    return st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=6), min_size=n, max_size=n)


@pytest.mark.parametrize("name,order", [("A3", 2), ("A4", 2), ("D4", 3), ("E6", 2)])
@settings(max_examples=30, deadline=None)
@given(data=st.data())
def test_projection_idempotent_self_adjoint(name, order, data):
    fs = folded(name, order)
    n = fs.base.rank
    v = data.draw(_vectors(n))
    w = data.draw(_vectors(n))
    pv, pw = fs.embed(fs.project(v)), fs.embed(fs.project(w))
    assert fs.embed(fs.project(pv)) == pv
    assert fs.base.form_data(pv, w) == fs.base.form_data(v, pw)
    # projection commutes with tau
    tv = [v[fs.tau.perm.index(i)] for i in range(n)]
    assert fs.project(tv) == fs.project(v)


def test_canonical_outer_orders():
    assert canonical_outer(build_root_system("D4"), 3).order == 3
    assert canonical_outer(build_root_system("A5")).order == 2
