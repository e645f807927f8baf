import itertools
import logging
from collections import Counter
from collections import defaultdict
from collections import deque
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from math import comb
from typing import Callable
from typing import Iterable
from typing import Iterator
from typing import Mapping
from typing import Optional
from typing import Union

import networkx as nx
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from normalsurf.slicing.exceptions import ComplexError

logger = logging.getLogger(__name__)

Face = tuple[int, ...]


def _normalize_face(face: Iterable[int]) -> Face:
    labels = tuple(sorted(face))
    if not labels:
        raise ComplexError("empty facet")
    for label in labels:
        if isinstance(label, bool) or not isinstance(label, int) or label < 1:
            raise ComplexError(f"vertex labels must be positive integers, got {label!r}")
    if len(set(labels)) != len(labels):
        raise ComplexError(f"facet {labels} repeats a vertex")
    return labels


def _maximal_faces(faces: Iterable[Face]) -> frozenset[Face]:
    maximal: list[Face] = []
    for face in sorted(set(faces), key=len, reverse=True):
        face_set = set(face)
        if not any(face_set <= set(other) for other in maximal):
            maximal.append(face)
    return frozenset(maximal)


@dataclass(frozen=True)
class SimplicialComplex:
    """Simplicial complex stored by its maximal faces (sorted label tuples).

    Complexes built with `pure=True` (the default) are rejected unless all
    facets share one cardinality. Links and spans are generally not pure and
    are built with `pure=False`, which keeps only inclusion-maximal faces.
    """

    facets: frozenset[Face]

    @classmethod
    def from_facets(
        cls, facets: Iterable[Iterable[int]], pure: bool = True
    ) -> "SimplicialComplex":
        normalized = [_normalize_face(facet) for facet in facets]
        if not pure:
            return cls(_maximal_faces(normalized))

        sizes = {len(facet) for facet in normalized}
        if len(sizes) > 1:
            raise ComplexError(
                f"facets of cardinalities {sorted(sizes)}: complex is not pure"
            )
        return cls(frozenset(normalized))

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted({v for facet in self.facets for v in facet}))

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @cached_property
    def dimension(self) -> int:
        return max((len(facet) for facet in self.facets), default=0) - 1

    @cached_property
    def is_pure(self) -> bool:
        return len({len(facet) for facet in self.facets}) <= 1

    @cached_property
    def faces_by_dimension(self) -> tuple[tuple[Face, ...], ...]:
        layers: list[set[Face]] = [set() for _ in range(self.dimension + 1)]
        for facet in self.facets:
            for size in range(1, len(facet) + 1):
                layers[size - 1].update(itertools.combinations(facet, size))
        return tuple(tuple(sorted(layer)) for layer in layers)

    @cached_property
    def tetrahedra(self) -> tuple[Face, ...]:
        return faces(self, 3)

    def __contains__(self, face: Iterable[int]) -> bool:
        face_set = set(face)
        return any(face_set <= set(facet) for facet in self.facets)

    def __len__(self) -> int:
        return len(self.facets)


@dataclass(frozen=True)
class FVector:
    entries: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index]

    def padded(self, length: int) -> tuple[int, ...]:
        return self.entries + (0,) * (length - len(self.entries))


@dataclass(frozen=True)
class BettiVector:
    """Ranks of rational homology, unreduced (beta_0 counts components)."""

    entries: tuple[int, ...]

    def __iter__(self) -> Iterator[int]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, index: int) -> int:
        return self.entries[index] if index < len(self.entries) else 0

    @property
    def alternating_sum(self) -> int:
        return sum((-1) ** i * beta for i, beta in enumerate(self.entries))


class ManifoldVerdict(Enum):
    YES = "yes"
    PSEUDOMANIFOLD_ONLY = "pseudomanifold-only"
    NO = "no"


@dataclass(frozen=True)
class ManifoldCheck:
    verdict: ManifoldVerdict
    certificate: str
    bounded_manifold: bool = False

    @property
    def is_closed_manifold(self) -> bool:
        return self.verdict is ManifoldVerdict.YES


class Orientability(Enum):
    ORIENTABLE = "orientable"
    NON_ORIENTABLE = "non-orientable"


@dataclass(frozen=True)
class DehnSommervilleCheck:
    applicable: bool
    reason: str
    f_vector: tuple[int, int, int, int]
    # f1 - (4 f0 - 10)
    lbt_slack: int
    # C(f0, 2) - f1
    edge_slack: int
    # f0 - f1 + f2 - f3
    euler_residual: int
    # 2 f2 - 4 f3
    ridge_residual: int

    @property
    def holds(self) -> bool:
        return (
            self.lbt_slack >= 0
            and self.edge_slack >= 0
            and self.euler_residual == 0
            and self.ridge_residual == 0
        )

    @property
    def lbt_equality(self) -> bool:
        return self.lbt_slack == 0


def faces(complex_: SimplicialComplex, dimension: int) -> tuple[Face, ...]:
    if 0 <= dimension <= complex_.dimension:
        return complex_.faces_by_dimension[dimension]
    return ()


def f_vector(complex_: SimplicialComplex) -> FVector:
    return FVector(tuple(len(layer) for layer in complex_.faces_by_dimension))


def euler_characteristic(complex_: SimplicialComplex) -> int:
    return sum((-1) ** i * count for i, count in enumerate(f_vector(complex_)))


def link(complex_: SimplicialComplex, vertex: int) -> SimplicialComplex:
    if vertex not in complex_.vertex_set:
        raise ComplexError(f"vertex {vertex} is not a vertex of the complex")
    return SimplicialComplex.from_facets(
        (
            tuple(w for w in facet if w != vertex)
            for facet in complex_.facets
            if vertex in facet and len(facet) > 1
        ),
        pure=False,
    )


def span(complex_: SimplicialComplex, vertices: Iterable[int]) -> SimplicialComplex:
    """Induced subcomplex: every face of the complex whose vertices lie in `vertices`."""
    chosen = set(vertices)
    restricted = {tuple(v for v in facet if v in chosen) for facet in complex_.facets}
    restricted.discard(())
    return SimplicialComplex.from_facets(restricted, pure=False)


def relabel(
    complex_: SimplicialComplex, mapping: Union[Mapping[int, int], Callable[[int], int]]
) -> SimplicialComplex:
    image = mapping.__getitem__ if isinstance(mapping, Mapping) else mapping
    return SimplicialComplex.from_facets(
        (tuple(image(v) for v in facet) for facet in complex_.facets),
        pure=complex_.is_pure,
    )


def one_skeleton(complex_: SimplicialComplex) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(complex_.vertices)
    graph.add_edges_from(faces(complex_, 1))
    return graph


def is_connected(complex_: SimplicialComplex) -> bool:
    return bool(complex_.facets) and nx.is_connected(one_skeleton(complex_))


def ridge_degrees(complex_: SimplicialComplex) -> Counter:
    """Number of facets containing each codimension-one face of a pure complex."""
    degrees: Counter = Counter()
    for facet in complex_.facets:
        for ridge in itertools.combinations(facet, len(facet) - 1):
            degrees[ridge] += 1
    return degrees


def boundary(complex_: SimplicialComplex) -> SimplicialComplex:
    if not complex_.is_pure:
        raise ComplexError("boundary is only defined for pure complexes")
    return SimplicialComplex.from_facets(
        (ridge for ridge, count in ridge_degrees(complex_).items() if count == 1),
        pure=False,
    )


def is_closed_pseudomanifold(complex_: SimplicialComplex) -> bool:
    return (
        complex_.is_pure
        and complex_.dimension >= 1
        and all(count == 2 for count in ridge_degrees(complex_).values())
    )


def _surface_kind(surface: SimplicialComplex) -> Optional[str]:
    """'closed' or 'bounded' for a connected combinatorial surface, None otherwise."""
    if surface.dimension != 2 or not surface.is_pure:
        return None

    degrees = ridge_degrees(surface)
    if any(count > 2 for count in degrees.values()):
        return None

    for vertex in surface.vertices:
        # vertex links of a surface must be a single path or cycle
        vertex_link = link(surface, vertex)
        if vertex_link.dimension != 1 or not vertex_link.is_pure:
            return None
        graph = one_skeleton(vertex_link)
        if not nx.is_connected(graph) or max(d for _, d in graph.degree) > 2:
            return None

    if not is_connected(surface):
        return None
    return "closed" if all(count == 2 for count in degrees.values()) else "bounded"


def is_combinatorial_3_manifold(complex_: SimplicialComplex) -> ManifoldCheck:
    if not complex_.is_pure:
        raise ComplexError("manifold recognition needs a pure complex")
    if complex_.dimension != 3:
        raise ComplexError(
            f"manifold recognition is restricted to dimension 3, got {complex_.dimension}"
        )

    degrees = ridge_degrees(complex_)
    for triangle, count in sorted(degrees.items()):
        if count > 2:
            return ManifoldCheck(
                ManifoldVerdict.NO, f"triangle {triangle} lies in {count} tetrahedra"
            )
    boundary_triangles = sorted(t for t, count in degrees.items() if count == 1)
    closed = not boundary_triangles

    singular = []
    for vertex in complex_.vertices:
        vertex_link = link(complex_, vertex)
        kind = _surface_kind(vertex_link)
        chi = euler_characteristic(vertex_link)
        if closed:
            if kind != "closed":
                return ManifoldCheck(
                    ManifoldVerdict.NO,
                    f"link of vertex {vertex} is not a closed connected surface",
                )
            if chi != 2:
                singular.append((vertex, chi))
        elif not (kind == "closed" and chi == 2) and not (kind == "bounded" and chi == 1):
            return ManifoldCheck(
                ManifoldVerdict.NO,
                f"{len(boundary_triangles)} boundary triangles; link of vertex "
                f"{vertex} is neither a 2-sphere nor a disk",
            )

    if not closed:
        return ManifoldCheck(
            ManifoldVerdict.NO,
            f"bounded combinatorial 3-manifold: {len(boundary_triangles)} boundary "
            f"triangles lie in exactly one tetrahedron, first {boundary_triangles[0]}",
            bounded_manifold=True,
        )
    if singular:
        vertex, chi = singular[0]
        return ManifoldCheck(
            ManifoldVerdict.PSEUDOMANIFOLD_ONLY,
            f"link of vertex {vertex} is a closed surface with Euler characteristic {chi}",
        )
    return ManifoldCheck(ManifoldVerdict.YES, "closed; every vertex link is a 2-sphere")


def orientability(complex_: SimplicialComplex) -> Orientability:
    """Propagate facet orientations across ridges until a conflict shows up.

    A facet (v_0, ..., v_d) with sign s induces sign s * (-1)^i on the ridge
    obtained by dropping v_i; the two facets at a ridge must induce opposite signs.
    """
    if not is_closed_pseudomanifold(complex_):
        raise ComplexError("orientability needs a closed pseudomanifold")
    if not is_connected(complex_):
        raise ComplexError("orientability needs a connected complex")

    incidence: dict[Face, list[tuple[Face, int]]] = defaultdict(list)
    for facet in complex_.facets:
        for i in range(len(facet)):
            incidence[facet[:i] + facet[i + 1 :]].append((facet, i))

    signs: dict[Face, int] = {}
    for seed in sorted(complex_.facets):
        if seed in signs:
            continue
        signs[seed] = 1
        queue = deque([seed])
        while queue:
            facet = queue.popleft()
            for i in range(len(facet)):
                induced = signs[facet] * (-1) ** i
                for other, j in incidence[facet[:i] + facet[i + 1 :]]:
                    if other == facet:
                        continue
                    required = -induced * (-1) ** j
                    if other not in signs:
                        signs[other] = required
                        queue.append(other)
                    elif signs[other] != required:
                        return Orientability.NON_ORIENTABLE
    return Orientability.ORIENTABLE


def is_k_neighborly(complex_: SimplicialComplex, k: int) -> bool:
    if k < 1:
        raise ComplexError(f"k must be at least 1, got {k}")
    counts = f_vector(complex_)
    if k - 1 >= len(counts):
        return False
    return counts[k - 1] == comb(counts[0], k)


def _boundary_rank(complex_: SimplicialComplex, dimension: int) -> int:
    rows = {face: index for index, face in enumerate(faces(complex_, dimension - 1))}
    columns = faces(complex_, dimension)
    if not rows or not columns:
        return 0

    entries: dict[int, dict[int, object]] = defaultdict(dict)
    for column, face in enumerate(columns):
        for i in range(len(face)):
            entries[rows[face[:i] + face[i + 1 :]]][column] = QQ((-1) ** i)
    matrix = DomainMatrix(dict(entries), (len(rows), len(columns)), QQ)
    return matrix.rank()


def betti_numbers(complex_: SimplicialComplex) -> BettiVector:
    if not complex_.facets:
        return BettiVector(())

    dimension = complex_.dimension
    ranks = [0] * (dimension + 2)
    for k in range(1, dimension + 1):
        ranks[k] = _boundary_rank(complex_, k)
    return BettiVector(
        tuple(
            len(faces(complex_, k)) - ranks[k] - ranks[k + 1]
            for k in range(dimension + 1)
        )
    )


def lbt_ds_check(complex_: SimplicialComplex) -> DehnSommervilleCheck:
    f0, f1, f2, f3 = f_vector(complex_).padded(4)[:4]
    applicable, reason = True, "closed combinatorial 3-manifold"
    if not complex_.is_pure or complex_.dimension != 3:
        applicable, reason = False, "not a pure 3-dimensional complex"
    else:
        check = is_combinatorial_3_manifold(complex_)
        if not check.is_closed_manifold:
            applicable, reason = False, check.certificate

    return DehnSommervilleCheck(
        applicable=applicable,
        reason=reason,
        f_vector=(f0, f1, f2, f3),
        lbt_slack=f1 - (4 * f0 - 10),
        edge_slack=comb(f0, 2) - f1,
        euler_residual=f0 - f1 + f2 - f3,
        ridge_residual=2 * f2 - 4 * f3,
    )
