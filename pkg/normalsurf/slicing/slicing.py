import itertools
import logging
from collections import Counter
from collections import defaultdict
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from functools import lru_cache
from functools import singledispatch
from math import comb
from typing import Iterable
from typing import Optional

import networkx as nx

from normalsurf.slicing.complexes import Face
from normalsurf.slicing.complexes import Orientability
from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.complexes import euler_characteristic
from normalsurf.slicing.complexes import faces
from normalsurf.slicing.complexes import is_closed_pseudomanifold
from normalsurf.slicing.complexes import is_connected
from normalsurf.slicing.complexes import orientability
from normalsurf.slicing.complexes import ridge_degrees
from normalsurf.slicing.complexes import span
from normalsurf.slicing.exceptions import ComplexError
from normalsurf.slicing.exceptions import PartitionError
from normalsurf.slicing.exceptions import SlicingError

logger = logging.getLogger(__name__)

# positions inside a sorted tetrahedron: quad type by the pair holding position 0
QUAD_TYPES = {(0, 1): 4, (0, 2): 5, (0, 3): 6}


@dataclass(frozen=True)
class VertexPartition:
    """Ordered split of the ambient vertex set; `v1` holds the upper vertices."""

    v1: frozenset[int]
    v2: frozenset[int]

    def __post_init__(self):
        if not self.v1 or not self.v2:
            raise PartitionError("both parts of a partition must be nonempty")
        if self.v1 & self.v2:
            raise PartitionError(f"parts overlap in {sorted(self.v1 & self.v2)}")

    @classmethod
    def from_upper(
        cls, complex_: SimplicialComplex, upper: Iterable[int]
    ) -> "VertexPartition":
        v1 = frozenset(upper)
        unknown = v1 - complex_.vertex_set
        if unknown:
            raise PartitionError(f"vertices {sorted(unknown)} are not in the complex")
        return cls(v1, complex_.vertex_set - v1)

    @property
    def c(self) -> Fraction:
        return Fraction(len(self.v2) - len(self.v1), 2)

    def validate_for(self, complex_: SimplicialComplex) -> None:
        if self.v1 | self.v2 != complex_.vertex_set:
            missing = sorted(complex_.vertex_set - (self.v1 | self.v2))
            extra = sorted((self.v1 | self.v2) - complex_.vertex_set)
            raise PartitionError(
                f"partition does not cover the vertex set (missing {missing}, unknown {extra})"
            )

    def complement(self) -> "VertexPartition":
        return VertexPartition(self.v2, self.v1)

    def side(self, vertex: int) -> int:
        if vertex in self.v1:
            return 1
        if vertex in self.v2:
            return 2
        raise PartitionError(f"vertex {vertex} is in neither part")

    def __str__(self) -> str:
        def braces(part):
            return "{" + ",".join(map(str, sorted(part))) + "}"

        return f"{braces(self.v1)}|{braces(self.v2)}"


@dataclass(frozen=True, order=True)
class SlicingVertex:
    upper: int
    lower: int

    def __str__(self) -> str:
        return f"({self.upper}|{self.lower})"


SlicingEdge = tuple[SlicingVertex, SlicingVertex]


@dataclass(frozen=True, order=True)
class SlicingFacet:
    """Triangle or quadrilateral cut from one tetrahedron, boundary in cyclic order."""

    tetrahedron: Face
    boundary: tuple[SlicingVertex, ...]

    @property
    def is_quadrilateral(self) -> bool:
        return len(self.boundary) == 4

    @property
    def edges(self) -> tuple[SlicingEdge, ...]:
        size = len(self.boundary)
        return tuple(
            _edge(self.boundary[i], self.boundary[(i + 1) % size]) for i in range(size)
        )


def _edge(a: SlicingVertex, b: SlicingVertex) -> SlicingEdge:
    return (a, b) if a <= b else (b, a)


@dataclass(frozen=True)
class SlicingStats:
    n: int
    e: int
    t: int
    q: int
    chi: int
    orientable: bool
    genus: Fraction
    components: int
    vertex_linking_components: int

    @property
    def f_vector(self) -> tuple[int, int, int, int]:
        return (self.n, self.e, self.t, self.q)

    @property
    def is_connected(self) -> bool:
        return self.components == 1

    @property
    def nonorientable_genus(self) -> Optional[int]:
        """Number of cross-caps, for connected non-orientable slicings only."""
        if self.orientable or not self.is_connected:
            return None
        return 2 - self.chi


@dataclass(frozen=True)
class Slicing:
    ambient: SimplicialComplex
    partition: VertexPartition
    vertices: tuple[SlicingVertex, ...]
    edges: tuple[SlicingEdge, ...]
    facets: tuple[SlicingFacet, ...]

    @cached_property
    def triangles(self) -> tuple[SlicingFacet, ...]:
        return tuple(facet for facet in self.facets if not facet.is_quadrilateral)

    @cached_property
    def quadrilaterals(self) -> tuple[SlicingFacet, ...]:
        return tuple(facet for facet in self.facets if facet.is_quadrilateral)

    @cached_property
    def facet_by_tetrahedron(self) -> dict[Face, SlicingFacet]:
        return {facet.tetrahedron: facet for facet in self.facets}

    @property
    def facet_boundaries(self) -> tuple[tuple[SlicingVertex, ...], ...]:
        return tuple(facet.boundary for facet in self.facets)

    @cached_property
    def statistics(self) -> SlicingStats:
        return stats(self)

    def complement(self) -> "Slicing":
        return slice_complex(self.ambient, self.partition.complement())


def _cut(upper: Iterable[int], lower: Iterable[int]) -> list[SlicingVertex]:
    return [SlicingVertex(x, a) for x in upper for a in lower]


def _facet(tetrahedron: Face, upper_set: frozenset[int]) -> Optional[SlicingFacet]:
    ups = [v for v in tetrahedron if v in upper_set]
    downs = [v for v in tetrahedron if v not in upper_set]
    if not ups or not downs:
        return None
    if len(ups) == 2:
        (x, y), (a, b) = ups, downs
        boundary = (
            SlicingVertex(x, a),
            SlicingVertex(x, b),
            SlicingVertex(y, b),
            SlicingVertex(y, a),
        )
    else:
        boundary = tuple(_cut(ups, downs))
    return SlicingFacet(tetrahedron, boundary)


def slice_complex(complex_: SimplicialComplex, partition: VertexPartition) -> Slicing:
    """Level set of the partition on a pure 3-complex.

    Cut edges become vertices, mixed triangles edges and mixed tetrahedra
    facets. A bounded complex is accepted only when no boundary triangle is
    mixed, so the result is always closed.
    """
    if not complex_.is_pure or complex_.dimension != 3:
        raise ComplexError("slicings are defined for pure 3-dimensional complexes")
    partition.validate_for(complex_)
    upper = partition.v1

    for triangle, count in sorted(ridge_degrees(complex_).items()):
        if count == 1 and 0 < sum(v in upper for v in triangle) < 3:
            raise PartitionError(
                f"boundary triangle {triangle} is split by {partition}; "
                "the slicing would have boundary"
            )

    vertices = []
    for a, b in faces(complex_, 1):
        if (a in upper) != (b in upper):
            vertices.append(SlicingVertex(a, b) if a in upper else SlicingVertex(b, a))
    if not vertices:
        raise PartitionError(f"{partition} cuts no edge of the complex")

    edges = []
    for triangle in faces(complex_, 2):
        cut = _cut(
            [v for v in triangle if v in upper], [v for v in triangle if v not in upper]
        )
        if cut:
            edges.append(_edge(*cut))

    facets = []
    for tetrahedron in complex_.tetrahedra:
        facet = _facet(tetrahedron, upper)
        if facet is not None:
            facets.append(facet)

    return Slicing(
        ambient=complex_,
        partition=partition,
        vertices=tuple(sorted(vertices)),
        edges=tuple(sorted(edges)),
        facets=tuple(facets),
    )


def _facet_components(slicing: Slicing) -> list[list[SlicingFacet]]:
    graph = nx.Graph()
    graph.add_nodes_from(slicing.vertices)
    graph.add_edges_from(slicing.edges)
    components = sorted(nx.connected_components(graph), key=min)
    component_of = {
        vertex: index
        for index, component in enumerate(components)
        for vertex in component
    }

    grouped: list[list[SlicingFacet]] = [[] for _ in components]
    for facet in slicing.facets:
        grouped[component_of[facet.boundary[0]]].append(facet)
    return grouped


def _is_orientable(facets: list[SlicingFacet]) -> bool:
    """Orient facets coherently: a shared edge must be run in opposite directions."""
    by_edge: dict[SlicingEdge, list[tuple[int, int]]] = defaultdict(list)
    for index, facet in enumerate(facets):
        size = len(facet.boundary)
        for i in range(size):
            a, b = facet.boundary[i], facet.boundary[(i + 1) % size]
            by_edge[_edge(a, b)].append((index, 1 if a < b else -1))

    signs: dict[int, int] = {}
    for seed in range(len(facets)):
        if seed in signs:
            continue
        signs[seed] = 1
        queue = deque([seed])
        while queue:
            index = queue.popleft()
            facet = facets[index]
            for edge in facet.edges:
                ours = next(d for i, d in by_edge[edge] if i == index)
                for other, theirs in by_edge[edge]:
                    if other == index:
                        continue
                    required = -signs[index] * ours * theirs
                    if other not in signs:
                        signs[other] = required
                        queue.append(other)
                    elif signs[other] != required:
                        return False
    return True


def _is_vertex_linking(facets: list[SlicingFacet]) -> bool:
    if any(facet.is_quadrilateral for facet in facets):
        return False
    uppers = {v.upper for facet in facets for v in facet.boundary}
    lowers = {v.lower for facet in facets for v in facet.boundary}
    return len(uppers) == 1 or len(lowers) == 1


def stats(slicing: Slicing) -> SlicingStats:
    incidence = Counter(edge for facet in slicing.facets for edge in facet.edges)
    open_edges = [edge for edge in slicing.edges if incidence[edge] != 2]
    stray = set(incidence) - set(slicing.edges)
    if open_edges or stray:
        edge = open_edges[0] if open_edges else min(stray)
        raise SlicingError(
            f"slicing is not closed: edge {edge[0]}{edge[1]} lies in "
            f"{incidence[edge]} facets"
        )

    n, e = len(slicing.vertices), len(slicing.edges)
    t, q = len(slicing.triangles), len(slicing.quadrilaterals)
    chi = n - e + t + q
    components = _facet_components(slicing)
    return SlicingStats(
        n=n,
        e=e,
        t=t,
        q=q,
        chi=chi,
        orientable=all(_is_orientable(component) for component in components),
        genus=Fraction(2 - chi, 2),
        components=len(components),
        vertex_linking_components=sum(
            _is_vertex_linking(component) for component in components
        ),
    )


@dataclass(frozen=True)
class Trace:
    """Edges and triangles of a slicing sharing one entry, plus its isolated vertices."""

    vertex: int
    side: int
    triangles: tuple[SlicingFacet, ...]
    edges: tuple[SlicingEdge, ...]
    vertices: tuple[SlicingVertex, ...]
    isolated: tuple[SlicingVertex, ...]


def _entry(vertex: SlicingVertex, side: int) -> int:
    return vertex.upper if side == 1 else vertex.lower


def trace(slicing: Slicing, vertex: int) -> Trace:
    if vertex not in slicing.ambient.vertex_set:
        raise ComplexError(f"vertex {vertex} is not a vertex of the ambient complex")
    side = slicing.partition.side(vertex)

    triangles = tuple(
        facet
        for facet in slicing.triangles
        if all(_entry(v, side) == vertex for v in facet.boundary)
    )
    edges = tuple(
        (a, b)
        for a, b in slicing.edges
        if _entry(a, side) == _entry(b, side) == vertex
    )
    covered = {v for edge in edges for v in edge}
    return Trace(
        vertex=vertex,
        side=side,
        triangles=triangles,
        edges=edges,
        vertices=tuple(sorted(covered)),
        isolated=tuple(
            v
            for v in slicing.vertices
            if _entry(v, side) == vertex and v not in covered
        ),
    )


@dataclass(frozen=True)
class StructureVerdict:
    passed: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.passed


def _facet_form_violation(facet: SlicingFacet) -> Optional[str]:
    uppers = [v.upper for v in facet.boundary]
    lowers = [v.lower for v in facet.boundary]
    if len(set(facet.boundary)) != len(facet.boundary):
        return "repeats a vertex"
    if not facet.is_quadrilateral:
        if len(set(uppers)) == 1 or len(set(lowers)) == 1:
            return None
        return "triangle has neither a common upper nor a common lower entry"
    if len(set(uppers)) != 2 or len(set(lowers)) != 2:
        return "quadrilateral is not two uppers times two lowers"
    for i in range(4):
        a, b = facet.boundary[i], facet.boundary[(i + 1) % 4]
        if (a.upper == b.upper) == (a.lower == b.lower):
            return f"quadrilateral side {a}{b} is a diagonal"
    return None


def validate_structure(slicing: Slicing) -> StructureVerdict:
    for a, b in slicing.edges:
        if a == b:
            return StructureVerdict(False, f"edge {a}{b} is a loop")
        if a.upper != b.upper and a.lower != b.lower:
            return StructureVerdict(
                False, f"edge {a}{b} joins cut edges with no common endpoint"
            )

    for facet in slicing.facets:
        problem = _facet_form_violation(facet)
        if problem:
            return StructureVerdict(False, f"facet in {facet.tetrahedron}: {problem}")

    edge_set = set(slicing.edges)
    for facet in slicing.quadrilaterals:
        sides = [edge for edge in facet.edges if edge in edge_set]
        entries = [(1, v.upper) for v in facet.boundary] + [
            (2, v.lower) for v in facet.boundary
        ]
        for side, vertex in sorted(set(entries)):
            shared = sum(
                1
                for a, b in sides
                if _entry(a, side) == _entry(b, side) == vertex
            )
            if shared != 1:
                return StructureVerdict(
                    False,
                    f"quadrilateral in {facet.tetrahedron} shares {shared} edges "
                    f"with the trace of {vertex}",
                )
    return StructureVerdict(True)


def _covers_all_pairs(vertices: Iterable, facet_vertex_sets: Iterable[Iterable]) -> bool:
    vertices = list(vertices)
    covered = set()
    for facet in facet_vertex_sets:
        covered.update(frozenset(pair) for pair in itertools.combinations(set(facet), 2))
    return len(covered) == comb(len(vertices), 2)


@singledispatch
def is_weakly_neighborly(polyhedral_map) -> bool:
    """Every pair of vertices lies in a common facet (quad diagonals included)."""
    raise TypeError(f"cannot test weak neighborliness of {type(polyhedral_map).__name__}")


@is_weakly_neighborly.register
def _(slicing: Slicing) -> bool:
    return _covers_all_pairs(slicing.vertices, slicing.facet_boundaries)


@is_weakly_neighborly.register
def _(complex_: SimplicialComplex) -> bool:
    return _covers_all_pairs(complex_.vertices, complex_.facets)


@lru_cache(maxsize=32)
def ambient_genus_precondition(complex_: SimplicialComplex) -> Optional[str]:
    """None when the complex is closed, connected and orientable, else what is missing."""
    if not is_closed_pseudomanifold(complex_):
        return "a closed ambient complex"
    if not is_connected(complex_):
        return "a connected ambient complex"
    if orientability(complex_) is not Orientability.ORIENTABLE:
        return "an orientable ambient complex"
    return None


def genus_via_span(
    complex_: SimplicialComplex,
    partition: VertexPartition,
    side: int = 1,
    slicing: Optional[Slicing] = None,
) -> Fraction:
    """Genus of the slicing read off one side: 1 - chi(span(V_side))."""
    problem = ambient_genus_precondition(complex_)
    if problem:
        raise ComplexError(f"genus via spans needs {problem}")
    if slicing is None:
        slicing = slice_complex(complex_, partition)
    if not slicing.statistics.is_connected:
        raise PartitionError(f"slicing of {partition} is disconnected")

    part = partition.v1 if side == 1 else partition.v2
    return Fraction(1 - euler_characteristic(span(complex_, part)))


@dataclass(frozen=True)
class NormalCoordinates:
    """Seven-entry piece counts per tetrahedron, aligned with `tetrahedra`.

    Entries 0-3 count triangles cutting off the vertex at that position of the
    sorted tetrahedron; 4, 5 and 6 count quadrilaterals separating positions
    {0,1}, {0,2} and {0,3} from the rest.
    """

    ambient: SimplicialComplex
    vectors: tuple[tuple[int, ...], ...]

    @property
    def tetrahedra(self) -> tuple[Face, ...]:
        return self.ambient.tetrahedra

    def __add__(self, other: "NormalCoordinates") -> "NormalCoordinates":
        if other.ambient != self.ambient:
            raise SlicingError("normal coordinates of different complexes")
        return NormalCoordinates(
            self.ambient,
            tuple(
                tuple(x + y for x, y in zip(mine, theirs))
                for mine, theirs in zip(self.vectors, other.vectors)
            ),
        )

    def _arc_count(self, index: int, missing: int, cut_off: int) -> int:
        tetrahedron = self.tetrahedra[index]
        vector = self.vectors[index]
        position = tetrahedron.index(cut_off)
        pair = tuple(sorted((position, tetrahedron.index(missing))))
        if 0 not in pair:
            pair = tuple(p for p in range(4) if p not in pair)
        return vector[position] + vector[QUAD_TYPES[pair]]

    def compatibility_violations(self) -> list[tuple[Face, int, int, int]]:
        """(triangle, cut-off vertex, count in one tetrahedron, count in the other)."""
        incident: dict[Face, list[int]] = defaultdict(list)
        for index, tetrahedron in enumerate(self.tetrahedra):
            for missing in tetrahedron:
                incident[tuple(v for v in tetrahedron if v != missing)].append(index)

        violations = []
        for triangle, indices in sorted(incident.items()):
            if len(indices) != 2:
                continue
            first, second = indices
            (missing_first,) = set(self.tetrahedra[first]) - set(triangle)
            (missing_second,) = set(self.tetrahedra[second]) - set(triangle)
            for vertex in triangle:
                here = self._arc_count(first, missing_first, vertex)
                there = self._arc_count(second, missing_second, vertex)
                if here != there:
                    violations.append((triangle, vertex, here, there))
        return violations

    @property
    def is_single_sheet(self) -> bool:
        return all(sum(vector) <= 1 for vector in self.vectors)

    @property
    def is_admissible(self) -> bool:
        return all(sum(1 for x in vector[4:] if x) <= 1 for vector in self.vectors)


def normal_coordinates(slicing: Slicing) -> NormalCoordinates:
    upper = slicing.partition.v1
    vectors = []
    for tetrahedron in slicing.ambient.tetrahedra:
        vector = [0] * 7
        if tetrahedron in slicing.facet_by_tetrahedron:
            ups = [i for i, v in enumerate(tetrahedron) if v in upper]
            downs = [i for i, v in enumerate(tetrahedron) if v not in upper]
            if len(ups) == 1:
                vector[ups[0]] = 1
            elif len(downs) == 1:
                vector[downs[0]] = 1
            else:
                vector[QUAD_TYPES[tuple(ups if 0 in ups else downs)]] = 1
        vectors.append(tuple(vector))

    coordinates = NormalCoordinates(slicing.ambient, tuple(vectors))
    violations = coordinates.compatibility_violations()
    if violations:
        triangle, vertex, here, there = violations[0]
        raise SlicingError(
            f"normal coordinates disagree on triangle {triangle} at vertex {vertex}: "
            f"{here} != {there}"
        )
    return coordinates


SURFACE_TYPES = {
    (4, 6, 4, 0): "tetrahedron boundary",
    (6, 9, 2, 3): "triangular prism boundary",
    (9, 18, 0, 9): "3x3 grid torus",
}


def surface_type(stats: SlicingStats, weakly_neighborly: bool = False) -> str:
    if weakly_neighborly and stats.f_vector in SURFACE_TYPES:
        return SURFACE_TYPES[stats.f_vector]
    if not stats.is_connected:
        return f"{stats.components} components, chi {stats.chi}"
    if stats.orientable:
        if stats.chi == 2:
            return "sphere"
        if stats.chi == 0:
            return "torus"
        return f"orientable genus {stats.genus}"
    if stats.chi == 1:
        return "projective plane"
    if stats.chi == 0:
        return "Klein bottle"
    return f"non-orientable genus {stats.nonorientable_genus}"
