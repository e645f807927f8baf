import logging

import numpy as np
import pytest

from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.constructors import list_builtins
from normalsurf.slicing.exceptions import FormatError
from normalsurf.slicing.formats import load_complex
from normalsurf.slicing.formats import parse_complex
from normalsurf.slicing.formats import render_complex
from normalsurf.slicing.formats import render_off
from normalsurf.slicing.formats import render_search_table
from normalsurf.slicing.formats import render_stats
from normalsurf.slicing.formats import spectral_layout
from normalsurf.slicing.formats import write_off
from normalsurf.slicing.search import SearchSpec
from normalsurf.slicing.search import find_weakly_neighborly
from normalsurf.slicing.tests.conftest import slicing_of

BDC4_6_TEXT = """\
# BdC4(6)
1 2 3 4
2 3 4 5
3 4 5 6
1 4 5 6
1 2 5 6
1 2 3 6
1 2 4 5
2 3 5 6
1 3 4 6
"""


def test_parse_complex(bdc4_6):
    assert parse_complex(BDC4_6_TEXT) == bdc4_6


def test_parse_a_single_tetrahedron():
    complex_ = parse_complex("4 3 2 1\n")
    assert complex_.facets == frozenset({(1, 2, 3, 4)})


@pytest.mark.parametrize(
    "text, line_number, message",
    [
        ("1 2 3 4\n1 2 3\n", 2, "3 labels"),
        ("# header\n\n1 2 x 4\n", 3, "non-integer"),
        ("1 2 3 0\n", 1, "not positive"),
        ("1 2 2 4\n", 1, "repeats"),
    ],
)
def test_parse_errors_carry_the_line_number(text, line_number, message):
    with pytest.raises(FormatError, match=message) as excinfo:
        parse_complex(text)
    assert excinfo.value.line_number == line_number
    assert str(excinfo.value).startswith(f"line {line_number}:")


def test_empty_document_is_rejected():
    with pytest.raises(FormatError, match="no facets"):
        parse_complex("# nothing here\n\n")


def test_duplicate_facets_are_dropped_with_a_warning(caplog):
    with caplog.at_level(logging.WARNING, logger="normalsurf"):
        complex_ = parse_complex("1 2 3 4\n4 3 2 1\n")
    assert len(complex_) == 1
    assert "line 2: duplicate facet" in caplog.text


@pytest.mark.parametrize("name", list_builtins())
def test_render_then_parse_recovers_builtins(name):
    complex_ = builtin(name)
    text = render_complex(complex_, comment=name)
    assert text.startswith(f"# {name}\n")
    assert parse_complex(text) == complex_


def test_load_complex(tmp_path, bdc4_6):
    path = tmp_path / "bdc4_6.txt"
    path.write_text(BDC4_6_TEXT)
    assert load_complex(path) == bdc4_6
    assert load_complex("bdC4:3") == bdc4_6
    with pytest.raises(FormatError, match="neither a readable file nor a builtin"):
        load_complex(tmp_path / "missing.txt")


def test_spectral_layout_of_a_triangle_pads_with_zeros():
    layout = spectral_layout(SimplicialComplex.from_facets([(1, 2, 3)]))
    assert sorted(layout) == [1, 2, 3]
    assert all(len(point) == 3 and point[2] == 0.0 for point in layout.values())


def test_spectral_layout_is_deterministic(bdc4_8):
    first = spectral_layout(bdc4_8)
    assert first == spectral_layout(bdc4_8)
    norms = [np.linalg.norm(point) for point in first.values()]
    assert all(norm == pytest.approx(1.0) or norm == 0.0 for norm in norms)


def off_faces(text):
    lines = text.splitlines()
    vertex_count, face_count, _ = map(int, lines[1].split())
    return lines, vertex_count, [line.split() for line in lines[2 + vertex_count :]]


def test_render_off_of_the_grid_torus(grid_torus):
    text = render_off(grid_torus)
    lines, vertex_count, faces = off_faces(text)
    assert lines[0] == "OFF"
    assert lines[1] == "9 9 0"
    assert len(faces) == 9
    assert all(face[0] == "4" and len(face) == 5 for face in faces)
    assert all(len(line.split()) == 3 for line in lines[2:11])
    assert render_off(grid_torus) == text


def test_render_off_of_the_cuboctahedron(cuboctahedron):
    lines, vertex_count, faces = off_faces(render_off(cuboctahedron, digits=3))
    assert (vertex_count, len(faces)) == (12, 14)
    assert sorted(face[0] for face in faces) == ["3"] * 8 + ["4"] * 6
    assert "-0.000" not in "\n".join(lines)


def test_write_off(tmp_path, tetrahedron_boundary):
    path = tmp_path / "vertex_figure.off"
    write_off(tetrahedron_boundary, path)
    assert path.read_text().splitlines()[1] == "4 4 0"

    with pytest.raises(FormatError, match="cannot write"):
        write_off(tetrahedron_boundary, tmp_path / "missing" / "out.off")


def test_render_stats(grid_torus):
    assert render_stats(grid_torus.statistics) == (
        "f = (9,18,0,9)  chi = 0  orientable  g = 1  components = 1  vertex-linking = 0"
    )


def test_render_search_table(delta4):
    result = find_weakly_neighborly(SearchSpec(delta4))
    text = render_search_table(result)
    assert "15 partitions examined, 15 slicings" in text
    assert "triangular prism boundary" in text


def test_render_off_of_a_klein_bottle():
    twisted = slicing_of("s2xs1-15", (1, 4, 7))
    assert render_off(twisted).startswith("OFF\n")
    lines, vertex_count, faces = off_faces(render_off(twisted))
    assert vertex_count == twisted.statistics.n
    assert sum(face[0] == "4" for face in faces) == 9


def test_off_vertices_are_edge_midpoints(grid_torus):
    layout = spectral_layout(grid_torus.ambient)
    lines, vertex_count, _ = off_faces(render_off(grid_torus))
    for vertex, line in zip(grid_torus.vertices, lines[2 : 2 + vertex_count]):
        midpoint = (np.array(layout[vertex.upper]) + np.array(layout[vertex.lower])) / 2
        assert [float(x) for x in line.split()] == pytest.approx(list(midpoint), abs=1e-6)


def test_non_ascii_files_are_format_errors(tmp_path):
    path = tmp_path / "accented.txt"
    path.write_bytes(b"1 2 3 4\n# caf\xc3\xa9\n")
    with pytest.raises(FormatError, match="not an ASCII text file"):
        load_complex(path)
