import pytest
from hypothesis import given
from hypothesis import settings
from hypothesis import strategies as st

from normalsurf.slicing.complexes import ManifoldVerdict
from normalsurf.slicing.complexes import Orientability
from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.complexes import betti_numbers
from normalsurf.slicing.complexes import boundary
from normalsurf.slicing.complexes import euler_characteristic
from normalsurf.slicing.complexes import f_vector
from normalsurf.slicing.complexes import faces
from normalsurf.slicing.complexes import is_closed_pseudomanifold
from normalsurf.slicing.complexes import is_combinatorial_3_manifold
from normalsurf.slicing.complexes import is_connected
from normalsurf.slicing.complexes import is_k_neighborly
from normalsurf.slicing.complexes import lbt_ds_check
from normalsurf.slicing.complexes import link
from normalsurf.slicing.complexes import orientability
from normalsurf.slicing.complexes import relabel
from normalsurf.slicing.complexes import span
from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.exceptions import ComplexError

BDC4_6 = builtin("bdC4:3")


def test_from_facets_sorts_and_rejects_mixed_sizes():
    complex_ = SimplicialComplex.from_facets([(3, 1, 2), (2, 3, 4)])
    assert complex_.facets == frozenset({(1, 2, 3), (2, 3, 4)})
    assert complex_.dimension == 2

    with pytest.raises(ComplexError):
        SimplicialComplex.from_facets([(1, 2, 3), (3, 4)])


def test_non_pure_construction_keeps_maximal_faces():
    complex_ = SimplicialComplex.from_facets([(1, 2, 3), (1, 2), (4,), (3, 4)], pure=False)
    assert complex_.facets == frozenset({(1, 2, 3), (3, 4)})
    assert not complex_.is_pure
    assert (1, 3) in complex_
    assert (1, 4) not in complex_


def test_faces_of_each_dimension(delta4):
    assert len(faces(delta4, 0)) == 5
    assert len(faces(delta4, 2)) == 10
    assert faces(delta4, 4) == ()
    assert delta4.tetrahedra == faces(delta4, 3)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("boundary-simplex:3", (5, 10, 10, 5)),
        ("bdC4:3", (6, 15, 18, 9)),
        ("bdC4:4", (8, 28, 40, 20)),
        ("gruenbaum-sphere-10", (10, 40, 60, 30)),
        ("s2xs1-15", (15, 90, 150, 75)),
    ],
)
def test_f_vectors_of_closed_builtins(name, expected):
    complex_ = builtin(name)
    assert tuple(f_vector(complex_)) == expected
    assert euler_characteristic(complex_) == 0


def test_link_and_span(delta4):
    vertex_link = link(BDC4_6, 1)
    assert tuple(f_vector(vertex_link)) == (5, 9, 6)
    assert euler_characteristic(vertex_link) == 2

    assert link(delta4, 5) == SimplicialComplex.from_facets(
        [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    )
    with pytest.raises(ComplexError):
        link(delta4, 9)

    # the odd vertices of BdC4(6) span a triangle without its interior
    odd = span(BDC4_6, (1, 3, 5))
    assert tuple(f_vector(odd)) == (3, 3)
    assert odd.dimension == 1
    assert euler_characteristic(odd) == 0
    assert span(BDC4_6, (1, 2, 3)).dimension == 2


def test_boundary_of_cylinders():
    for name in ("C1", "C2"):
        sides = boundary(builtin(name))
        assert tuple(f_vector(sides)) == (8, 12, 8)
        assert not is_connected(sides)
        assert span(sides, (1, 2, 3, 4)).facets == frozenset(
            {(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)}
        )


def test_manifold_recognition(delta4, twisted):
    assert is_combinatorial_3_manifold(delta4).verdict is ManifoldVerdict.YES
    assert is_combinatorial_3_manifold(twisted).is_closed_manifold

    cylinder = is_combinatorial_3_manifold(builtin("C1"))
    assert cylinder.verdict is ManifoldVerdict.NO
    assert cylinder.bounded_manifold
    assert "boundary triangles" in cylinder.certificate


def test_three_tetrahedra_on_a_triangle_is_not_a_manifold():
    complex_ = SimplicialComplex.from_facets([(1, 2, 3, 4), (1, 2, 3, 5), (1, 2, 3, 6)])
    check = is_combinatorial_3_manifold(complex_)
    assert check.verdict is ManifoldVerdict.NO
    assert "(1, 2, 3)" in check.certificate
    assert not check.bounded_manifold


def test_pinched_vertex_is_not_a_manifold(delta4):
    # two copies of the 3-sphere glued at vertex 1: the link of 1 is disconnected
    copy = relabel(delta4, {1: 1, 2: 6, 3: 7, 4: 8, 5: 9})
    pinched = SimplicialComplex.from_facets(delta4.facets | copy.facets)
    assert is_closed_pseudomanifold(pinched)
    assert is_combinatorial_3_manifold(pinched).verdict is ManifoldVerdict.NO


def test_suspended_torus_is_only_a_pseudomanifold():
    torus = [
        tuple(sorted((i % 7 + 1, (i + a) % 7 + 1, (i + 3) % 7 + 1)))
        for i in range(7)
        for a in (1, 2)
    ]
    suspension = SimplicialComplex.from_facets(
        triangle + (apex,) for triangle in torus for apex in (8, 9)
    )
    assert tuple(f_vector(suspension)) == (9, 35, 56, 28)
    assert is_closed_pseudomanifold(suspension)

    check = is_combinatorial_3_manifold(suspension)
    assert check.verdict is ManifoldVerdict.PSEUDOMANIFOLD_ONLY
    assert not check.is_closed_manifold
    assert check.certificate == (
        "link of vertex 8 is a closed surface with Euler characteristic 0"
    )


def test_manifold_recognition_rejects_other_dimensions():
    with pytest.raises(ComplexError):
        is_combinatorial_3_manifold(SimplicialComplex.from_facets([(1, 2, 3)]))


def test_orientability(delta4, gruenbaum, twisted):
    assert orientability(delta4) is Orientability.ORIENTABLE
    assert orientability(BDC4_6) is Orientability.ORIENTABLE
    assert orientability(gruenbaum) is Orientability.ORIENTABLE
    assert orientability(twisted) is Orientability.NON_ORIENTABLE

    with pytest.raises(ComplexError):
        orientability(builtin("C1"))


def test_projective_plane_is_non_orientable():
    rp2 = SimplicialComplex.from_facets(
        [
            (1, 2, 3),
            (1, 3, 4),
            (1, 4, 5),
            (1, 5, 6),
            (1, 2, 6),
            (2, 3, 5),
            (3, 4, 6),
            (2, 4, 5),
            (3, 5, 6),
            (2, 4, 6),
        ]
    )
    assert euler_characteristic(rp2) == 1
    assert orientability(rp2) is Orientability.NON_ORIENTABLE
    assert tuple(betti_numbers(rp2)) == (1, 0, 0)


def test_neighborliness(gruenbaum):
    assert is_k_neighborly(BDC4_6, 2)
    assert not is_k_neighborly(BDC4_6, 3)
    assert not is_k_neighborly(gruenbaum, 2)
    with pytest.raises(ComplexError):
        is_k_neighborly(BDC4_6, 0)


def test_betti_numbers(delta4, twisted):
    assert tuple(betti_numbers(delta4)) == (1, 0, 0, 1)
    circle = SimplicialComplex.from_facets([(1, 2), (2, 3), (1, 3)])
    assert tuple(betti_numbers(circle)) == (1, 1)
    assert tuple(betti_numbers(twisted)) == (1, 1, 0, 0)
    assert betti_numbers(span(BDC4_6, (1, 3, 5)))[2] == 0


def test_lower_bound_and_dehn_sommerville(gruenbaum):
    check = lbt_ds_check(BDC4_6)
    assert check.applicable
    assert check.holds
    assert check.edge_slack == 0
    assert check.lbt_slack == 1

    assert lbt_ds_check(builtin("boundary-simplex:3")).lbt_equality

    check = lbt_ds_check(gruenbaum)
    assert (check.lbt_slack, check.edge_slack) == (10, 5)
    assert check.euler_residual == check.ridge_residual == 0

    check = lbt_ds_check(builtin("C1"))
    assert not check.applicable
    assert "bounded" in check.reason


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(sorted(BDC4_6.facets)), min_size=1))
def test_betti_numbers_agree_with_euler_characteristic(facets):
    complex_ = SimplicialComplex.from_facets(facets)
    assert betti_numbers(complex_).alternating_sum == euler_characteristic(complex_)


@settings(max_examples=25, deadline=None)
@given(st.permutations(range(11, 17)))
def test_relabelling_preserves_invariants(images):
    mapping = dict(zip(range(1, 7), images))
    relabelled = relabel(BDC4_6, mapping)
    assert tuple(f_vector(relabelled)) == tuple(f_vector(BDC4_6))
    assert is_combinatorial_3_manifold(relabelled).is_closed_manifold
    assert orientability(relabelled) is Orientability.ORIENTABLE
    assert is_k_neighborly(relabelled, 2)


@settings(max_examples=40, deadline=None)
@given(st.sets(st.sampled_from(sorted(BDC4_6.facets)), min_size=1))
def test_closing_under_faces_changes_nothing(facets):
    complex_ = SimplicialComplex.from_facets(facets)
    every_face = [face for layer in complex_.faces_by_dimension for face in layer]
    assert SimplicialComplex.from_facets(every_face, pure=False) == complex_
