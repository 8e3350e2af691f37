from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from twistconj import rational as qa
from twistconj.alcove import build_alcove, face_point, su_unchart, vertices_and_faces
from twistconj.loopverify import fixed_subalgebra_dim
from twistconj.rootsys import SimpleType
from twistconj.stabilizer import (SubDiagram, describe, kept_coroots, label, pi1_and_quotient,
                                  recognize_components, weight_dimension)

from conftest import folded

CASES = [("A1", 1), ("A2", 1), ("A3", 1), ("B2", 1), ("G2", 1), ("B3", 1), ("C3", 1), ("F4", 1),
         ("D4", 1), ("A2", 2), ("A3", 2), ("A4", 2), ("A5", 2), ("D4", 2), ("D4", 3), ("E6", 2)]


def faces_of(fs):
    al = build_alcove(fs)
    return al, [(f, face_point(al, f)) for f in vertices_and_faces(al)]


def test_interior_is_torus():
    fs = folded("A3", 2)
    al = build_alcove(fs)
    d = describe(fs, al.barycenter)
    assert d.kept == () and d.components == () and d.torus_rank == 2
    assert d.label == "U₁×U₁"
    assert d.pi1_free_rank == 2


def test_twisted_su4_origin_is_sp4():
    fs = folded("A3", 2)
    d = describe(fs, [0, 0])
    assert [str(t) for t in d.components] == ["B2"]
    assert d.label == "Sp₄"
    assert d.pi1_free_rank == 0 and d.pi1_torsion == ()
    assert fixed_subalgebra_dim(4, 2, [0, 0]) == 10


def test_twisted_su4_far_vertex_is_rank_two_simple():
    # the (1/2, 0) vertex has a 10-dimensional stabilizer, not SU2 x SU2
    fs = folded("A3", 2)
    h = su_unchart(fs, [F(1, 2), 0])
    d = describe(fs, h)
    assert d.dimension == 10 == fixed_subalgebra_dim(4, 2, [F(1, 2), 0])
    assert d.label == "Sp₄"


def test_twisted_su4_edges():
    fs = folded("A3", 2)
    diag = describe(fs, su_unchart(fs, [F(1, 5), F(1, 5)]))
    assert (diag.pi1_free_rank, diag.central_quotient) == (1, (2,))
    assert diag.label == "(SU₂×U₁)/ℤ₂"
    bottom = describe(fs, su_unchart(fs, [F(1, 5), 0]))
    assert (bottom.pi1_free_rank, bottom.central_quotient) == (1, ())
    assert bottom.label == "SU₂×U₁"


def test_c2_vertices():
    fs = folded("B2")
    al = build_alcove(fs)
    labels = sorted(describe(fs, v).label for v in al.vertices)
    assert labels == ["SU₂×SU₂", "Sp₄", "Sp₄"]
    assert pi1_and_quotient(fs, [0, 0]) == (0, (), ())


def test_f4_has_b4_vertex():
    fs = folded("F4")
    al = build_alcove(fs)
    comps = [[str(t) for t in describe(fs, v).components] for v in al.vertices]
    assert ["B4"] in comps


def test_label_formats():
    a1 = SimpleType("A", 1)
    from twistconj.stabilizer import StabilizerDescriptor
    assert label(StabilizerDescriptor((1, 2), (SimpleType("C", 2),), 0, 0, (), ())) == "Sp₄"
    assert label(StabilizerDescriptor((0, 2), (a1, a1), 0, 0, (), (2,))) == "(SU₂×SU₂)/ℤ₂"
    assert label(StabilizerDescriptor((1,), (a1,), 1, 1, (), ())) == "SU₂×U₁"
    assert label(StabilizerDescriptor((0, 1, 2), (SimpleType("B", 3),), 0, 0, (), ())) == "Spin₇"
    assert label(StabilizerDescriptor((0, 1), (SimpleType("D", 4),), 0, 0, (), (2,))) == "Spin₈/ℤ₂"


def test_recognize_single_node_and_rejects_affine():
    assert recognize_components(SubDiagram((1,), ((2,),))) == [SimpleType("A", 1)]
    with pytest.raises(ValueError):
        recognize_components(SubDiagram((0, 1), ((2, -2), (-2, 2))))


@pytest.mark.parametrize("name,order", CASES)
def test_dimension_two_ways(name, order):
    fs = folded(name, order)
    al, faces = faces_of(fs)
    for f, p in faces:
        assert describe(fs, p, al).dimension == weight_dimension(fs, p)


@pytest.mark.parametrize("name,order", CASES)
def test_kept_coroots_are_integral(name, order):
    # Q_H^vee lies in the invariant coroot lattice Z^l
    fs = folded(name, order)
    al, faces = faces_of(fs)
    for f, p in faces:
        for c in kept_coroots(fs, sorted(f.tight)):
            assert all(qa.is_integer(x) for x in c)


@pytest.mark.parametrize("name,order", CASES)
def test_stabilizer_grows_toward_vertices(name, order):
    fs = folded(name, order)
    al, faces = faces_of(fs)
    dims = {f.tight: describe(fs, p, al).dimension for f, p in faces}
    for s, d in dims.items():
        for t, e in dims.items():
            if s < t:
                assert d < e


@pytest.mark.parametrize("name,order", CASES)
def test_vertex_stabilizers_are_semisimple(name, order):
    fs = folded(name, order)
    al = build_alcove(fs)
    for v in al.vertices:
        d = describe(fs, v, al)
        assert d.torus_rank == 0 and d.pi1_free_rank == 0


@pytest.mark.parametrize("n,twist", [(3, 1), (4, 2), (5, 2)])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_dimension_matches_matrix_oracle(n, twist, data):
    fs = folded(f"A{n - 1}", twist)
    al = build_alcove(fs)
    faces = vertices_and_faces(al)
    f = data.draw(st.sampled_from(faces))
    weights = data.draw(st.lists(st.integers(1, 9), min_size=len(f.vertices), max_size=len(f.vertices)))
    tot = sum(weights)
    p = [sum((F(w, tot) * al.vertices[j][k] for w, j in zip(weights, f.vertices)), F(0)) for k in range(fs.dim)]
    from twistconj.alcove import su_chart
    assert describe(fs, p, al).dimension == fixed_subalgebra_dim(n, twist, su_chart(fs, p))
