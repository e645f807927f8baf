import itertools

import pytest

from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.slicing import VertexPartition
from normalsurf.slicing.slicing import slice_complex


def slicing_of(name, upper):
    complex_ = builtin(name)
    return slice_complex(complex_, VertexPartition.from_upper(complex_, upper))


@pytest.fixture(scope="session")
def delta4():
    return builtin("boundary-simplex:3")


@pytest.fixture(scope="session")
def bdc4_6():
    return builtin("bdC4:3")


@pytest.fixture(scope="session")
def bdc4_8():
    return builtin("bdC4:4")


@pytest.fixture(scope="session")
def gruenbaum():
    return builtin("gruenbaum-sphere-10")


@pytest.fixture(scope="session")
def twisted():
    return builtin("s2xs1-15")


@pytest.fixture(scope="session")
def cross_polytope():
    """Boundary of the 4-dimensional cross-polytope; i and i+1 are antipodal for odd i."""
    return SimplicialComplex.from_facets(
        itertools.product((1, 2), (3, 4), (5, 6), (7, 8))
    )


@pytest.fixture(scope="session")
def grid_torus():
    return slicing_of("bdC4:3", (1, 3, 5))


@pytest.fixture(scope="session")
def tetrahedron_boundary():
    return slicing_of("boundary-simplex:3", (1,))


@pytest.fixture(scope="session")
def prism():
    return slicing_of("boundary-simplex:3", (1, 2))


@pytest.fixture(scope="session")
def cuboctahedron():
    return slicing_of("C2", (1, 2, 3, 4))
