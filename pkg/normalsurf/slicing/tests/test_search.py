from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from normalsurf import settings
from normalsurf.slicing.bounds import Verdict
from normalsurf.slicing.constructors import Permutation
from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.constructors import builtin_symmetry
from normalsurf.slicing.exceptions import SearchError
from normalsurf.slicing.formats import render_search_tsv
from normalsurf.slicing.search import CLASSIFICATION_LIBRARY
from normalsurf.slicing.search import PUBLISHED_TABLES
from normalsurf.slicing.search import PartitionEvaluator
from normalsurf.slicing.search import SearchSpec
from normalsurf.slicing.search import canonical_masks
from normalsurf.slicing.search import classify_library
from normalsurf.slicing.search import enumerate_slicings
from normalsurf.slicing.search import extremal_table
from normalsurf.slicing.search import find_weakly_neighborly
from normalsurf.slicing.search import published_family
from normalsurf.slicing.slicing import normal_coordinates
from normalsurf.slicing.slicing import slice_complex
from normalsurf.slicing.slicing import validate_structure


def keys(result):
    return [row.key for row in result.rows]


@pytest.mark.parametrize(
    "vertex_count, sizes, expected",
    [(5, None, 15), (6, None, 31), (6, (3, 3), 10), (6, (1, 2), 21)],
)
def test_canonical_masks(vertex_count, sizes, expected):
    masks = list(canonical_masks(vertex_count, sizes))
    assert len(masks) == expected
    assert len(set(masks)) == expected
    assert all(mask & 1 for mask in masks)


def test_enumerate_the_simplex_boundary(delta4):
    result = enumerate_slicings(SearchSpec(delta4))
    assert result.examined == 15
    assert len(result.rows) == 15
    assert result.summary == [("tetrahedron boundary", 5), ("triangular prism boundary", 10)]
    assert result.alarms == 0
    assert keys(result) == sorted(keys(result))


def test_weakly_neighborly_slicings_up_to_symmetry(delta4):
    spec = SearchSpec(delta4, symmetry=builtin_symmetry("boundary-simplex:3"))
    result = find_weakly_neighborly(spec)
    assert keys(result) == [(1,), (1, 2)]
    assert result.skipped_symmetric == 13


def test_only_the_grid_torus_is_weakly_neighborly_in_bdc4_6(bdc4_6):
    result = find_weakly_neighborly(SearchSpec(bdc4_6))
    assert keys(result) == [(1, 3, 5)]
    assert result.rows[0].surface_type == "3x3 grid torus"


@pytest.mark.parametrize("name", ["bdC4:4", "gruenbaum-sphere-10"])
def test_no_weakly_neighborly_slicings(name):
    spec = SearchSpec(builtin(name), symmetry=builtin_symmetry(name))
    assert find_weakly_neighborly(spec).rows == ()


def test_classify_library_finds_three_surfaces():
    classification = classify_library(CLASSIFICATION_LIBRARY)
    assert classification.surface_types == [
        "3x3 grid torus",
        "tetrahedron boundary",
        "triangular prism boundary",
    ]
    assert classification.results["s2xs1-15"].rows == ()


def test_symmetry_reduction_keeps_every_class(bdc4_6):
    full = enumerate_slicings(SearchSpec(bdc4_6))
    reduced = enumerate_slicings(SearchSpec(bdc4_6, symmetry=builtin_symmetry("bdC4:3")))
    assert len(reduced.rows) < len(full.rows)
    assert reduced.examined == full.examined

    def classes(result):
        return {(row.stats.f_vector, row.stats.orientable) for row in result.rows}

    assert classes(reduced) == classes(full)


def test_unique_genus_one_slicing_at_three_three(bdc4_6):
    spec = SearchSpec(
        bdc4_6,
        sizes=(3, 3),
        genus_range=(Fraction(1), Fraction(1)),
        symmetry=builtin_symmetry("bdC4:3"),
    )
    assert keys(enumerate_slicings(spec)) == [(1, 3, 5)]


def test_quadrilateral_filter(bdc4_6):
    result = enumerate_slicings(SearchSpec(bdc4_6, quad_range=(9, 9)))
    assert keys(result) == [(1, 3, 5)]


def test_connected_filter(cross_polytope):
    everything = enumerate_slicings(SearchSpec(cross_polytope))
    connected = enumerate_slicings(SearchSpec(cross_polytope, connected_only=True))
    assert (1, 2) in keys(everything)
    assert (1, 2) not in keys(connected)
    assert all(row.stats.is_connected for row in connected.rows)


def test_bounded_complexes_skip_split_boundaries():
    result = enumerate_slicings(SearchSpec(builtin("C1")))
    assert keys(result) == [(1, 2, 3, 4)]
    assert result.skipped_boundary == 126
    with pytest.raises(SearchError):
        find_weakly_neighborly(SearchSpec(builtin("C1")))


@pytest.mark.parametrize("jobs", [1, 8])
def test_search_output_does_not_depend_on_jobs(bdc4_8, jobs):
    serial = enumerate_slicings(SearchSpec(bdc4_8, jobs=1))
    chunked = enumerate_slicings(SearchSpec(bdc4_8, jobs=jobs, chunk_size=8))
    assert chunked.examined == serial.examined == 127
    assert render_search_tsv(chunked) == render_search_tsv(serial)


@pytest.mark.parametrize(
    "options",
    [
        {"sizes": (0, 2)},
        {"sizes": (3, 2)},
        {"sizes": (2, 8)},
        {"jobs": 0},
        {"symmetry": (Permutation.parse("(1,2)"),)},
    ],
)
def test_invalid_search_specs(bdc4_8, options):
    with pytest.raises(SearchError):
        enumerate_slicings(SearchSpec(bdc4_8, **options))


def test_large_complexes_need_a_size_range(monkeypatch, twisted):
    monkeypatch.setattr(settings, "FULL_ENUMERATION_VERTEX_LIMIT", 10)
    with pytest.raises(SearchError, match="part-size range"):
        enumerate_slicings(SearchSpec(twisted))
    assert enumerate_slicings(SearchSpec(twisted, sizes=(1, 1))).examined == 15


evaluator = PartitionEvaluator(SearchSpec(builtin("bdC4:4")))


@hypothesis_settings(max_examples=50, deadline=None)
@given(st.integers(0, 127).map(lambda rest: 1 | rest << 1))
def test_bitmask_counts_match_the_slicing(mask):
    if mask == evaluator.full:
        return
    partition = evaluator.partition(mask)
    slicing = slice_complex(evaluator.spec.complex_, partition)
    assert evaluator.counts(mask) == slicing.statistics.f_vector


def test_gruenbaum_table():
    table = extremal_table(
        builtin("gruenbaum-sphere-10"),
        published_family("gruenbaum-sphere-10"),
        PUBLISHED_TABLES["gruenbaum-sphere-10"],
    )
    assert [row.q for row in table.rows] == [0, 3, 9, 18, 30]
    assert [row.genus for row in table.rows] == [0, 0, 1, 3, 6]
    assert [row.n for row in table.rows] == [1, 2, 3, 4, 5]
    assert all(row.verdict is Verdict.EQUALITY for row in table.rows[2:])
    assert [(row.partition.v1, column) for row, column in table.discrepancies] == [
        (frozenset({1, 3, 5, 7}), "g"),
        (frozenset({1, 3, 5, 7}), "n"),
        (frozenset({1, 3, 5, 7, 9}), "g"),
        (frozenset({1, 3, 5, 7, 9}), "n"),
    ]


def test_twisted_table_matches_the_printed_one():
    table = extremal_table(
        builtin("s2xs1-15"), published_family("s2xs1-15"), PUBLISHED_TABLES["s2xs1-15"]
    )
    assert [row.q for row in table.rows] == [9, 18, 30]
    assert [row.genus for row in table.rows] == [1, 3, 6]
    assert all(row.verdict is Verdict.EQUALITY for row in table.rows)
    assert table.discrepancies == []


def test_published_family():
    assert published_family("boundary-simplex:3") == ((1,), (1, 2))
    with pytest.raises(SearchError):
        published_family("C1")


@pytest.mark.parametrize("name", ["gruenbaum-sphere-10", "bdC4:4", "C2"])
def test_every_enumerated_slicing_is_well_formed(name):
    complex_ = builtin(name)
    result = enumerate_slicings(SearchSpec(complex_))
    assert result.rows
    for row in result.rows:
        slicing = slice_complex(complex_, row.partition)
        assert validate_structure(slicing), str(row.partition)
        coordinates = normal_coordinates(slicing)
        assert coordinates.compatibility_violations() == []
        assert coordinates.is_single_sheet


@pytest.mark.parametrize(
    "name, reduce",
    [("gruenbaum-sphere-10", False), ("C2", False), ("s2xs1-15", True)],
)
def test_full_enumerations_raise_no_alarms(name, reduce):
    # alarms are invariant under automorphisms, so one partition per orbit suffices
    symmetry = builtin_symmetry(name) if reduce else ()
    result = enumerate_slicings(SearchSpec(builtin(name), symmetry=symmetry))
    assert result.rows
    assert [row for row in result.rows if row.alarms] == []
