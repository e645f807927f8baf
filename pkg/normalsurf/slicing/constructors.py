import itertools
import logging
import re
from dataclasses import dataclass
from dataclasses import field
from functools import cached_property
from functools import lru_cache
from typing import Iterable
from typing import Optional
from typing import Sequence

from sympy.combinatorics import Permutation as SympyPermutation
from sympy.combinatorics import PermutationGroup

from normalsurf.slicing.complexes import Face
from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.complexes import is_combinatorial_3_manifold
from normalsurf.slicing.complexes import is_k_neighborly
from normalsurf.slicing.complexes import relabel
from normalsurf.slicing.exceptions import ConstructionError

logger = logging.getLogger(__name__)

_CYCLE = re.compile(r"\(([^()]*)\)")
_BUILTIN_NAME = re.compile(
    r"^(?P<family>[A-Za-z0-9-]+?)(?::(?P<colon>\d+)|\((?P<paren>\d+)\))?$"
)


@dataclass(frozen=True)
class Permutation:
    """Permutation of positive labels in disjoint-cycle notation.

    Labels that appear in no cycle are fixed.
    """

    cycles: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for cycle in self.cycles:
            for label in cycle:
                if isinstance(label, bool) or not isinstance(label, int) or label < 1:
                    raise ConstructionError(
                        f"permutation labels must be positive integers, got {label!r}"
                    )
                if label in seen:
                    raise ConstructionError(
                        f"cycles are not disjoint: label {label} appears twice"
                    )
                seen.add(label)

    @classmethod
    def parse(cls, text: str) -> "Permutation":
        stripped = text.strip()
        if _CYCLE.sub("", stripped).strip():
            raise ConstructionError(f"cannot parse permutation {text!r}")

        cycles = []
        for body in _CYCLE.findall(stripped):
            tokens = [token for token in re.split(r"[,\s]+", body.strip()) if token]
            try:
                cycle = tuple(int(token) for token in tokens)
            except ValueError as exc:
                raise ConstructionError(f"cannot parse permutation {text!r}") from exc
            if len(cycle) > 1:
                cycles.append(cycle)
        return cls(tuple(cycles))

    @cached_property
    def mapping(self) -> dict[int, int]:
        images = {}
        for cycle in self.cycles:
            for position, label in enumerate(cycle):
                images[label] = cycle[(position + 1) % len(cycle)]
        return images

    @property
    def degree(self) -> int:
        return max((label for cycle in self.cycles for label in cycle), default=0)

    def __call__(self, label: int) -> int:
        return self.mapping.get(label, label)

    def to_sympy(self, degree: int) -> SympyPermutation:
        if self.degree > degree:
            raise ConstructionError(
                f"permutation {self} moves label {self.degree} outside 1..{degree}"
            )
        if not self.cycles:
            return SympyPermutation(list(range(degree)))
        return SympyPermutation(
            [[label - 1 for label in cycle] for cycle in self.cycles], size=degree
        )

    def __str__(self) -> str:
        if not self.cycles:
            return "()"
        return "".join("(" + ",".join(map(str, cycle)) + ")" for cycle in self.cycles)


@dataclass(frozen=True)
class OrbitSpec:
    generators: tuple[Permutation, ...]
    seed: Face
    expected_length: Optional[int] = None

    def generate(self, degree: Optional[int] = None) -> frozenset[Face]:
        facets = orbit(self.generators, self.seed, degree=degree)
        if self.expected_length is not None and len(facets) != self.expected_length:
            raise ConstructionError(
                f"orbit of {self.seed} has length {len(facets)}, "
                f"expected {self.expected_length}"
            )
        return facets


@dataclass(frozen=True)
class BuiltinSpec:
    family: str
    parameter: Optional[int] = None
    symmetry: tuple[Permutation, ...] = field(default=(), compare=False)


def orbit(
    generators: Sequence[Permutation],
    seed: Iterable[int],
    degree: Optional[int] = None,
) -> frozenset[Face]:
    """Closure of the sorted seed under the generators, acting on vertex labels."""
    seed_face = tuple(sorted(seed))
    if not seed_face or seed_face[0] < 1:
        raise ConstructionError(f"seed {seed_face} must consist of positive labels")
    needed = max([seed_face[-1]] + [generator.degree for generator in generators])
    if degree is None:
        degree = needed
    elif needed > degree:
        raise ConstructionError(f"label {needed} is outside 1..{degree}")

    moving = [generator for generator in generators if generator.cycles]
    if not moving:
        return frozenset([seed_face])

    group = PermutationGroup([generator.to_sympy(degree) for generator in moving])
    images = group.orbit([label - 1 for label in seed_face], action="sets")
    facets = frozenset(tuple(sorted(label + 1 for label in image)) for image in images)
    logger.debug("orbit of %s under %d generators: %d facets", seed_face, len(moving), len(facets))
    return facets


def union_of_orbits(
    specs: Sequence[OrbitSpec], degree: Optional[int] = None
) -> SimplicialComplex:
    facets: set[Face] = set()
    for spec in specs:
        generated = spec.generate(degree=degree)
        shared = facets & generated
        if shared:
            raise ConstructionError(
                f"orbit of {spec.seed} repeats facet {min(shared)} of an earlier orbit"
            )
        facets |= generated
    return SimplicialComplex.from_facets(facets)


def dihedral_generators(k: int) -> tuple[Permutation, Permutation]:
    """Rotation (1,...,2k) and the reflection (2k,2)(2k-1,3)...(k+2,k)."""
    rotation = Permutation((tuple(range(1, 2 * k + 1)),))
    reflection = Permutation(tuple((2 * k + 2 - i, i) for i in range(2, k + 1)))
    return rotation, reflection


def _half_vertex_count(vertex_count: int) -> int:
    if vertex_count % 2:
        raise ConstructionError(f"cyclic 4-polytope needs an even vertex count, got {vertex_count}")
    if vertex_count < 6:
        raise ConstructionError(f"cyclic 4-polytope needs at least 6 vertices, got {vertex_count}")
    return vertex_count // 2


def cyclic_polytope_boundary(vertex_count: int) -> SimplicialComplex:
    k = _half_vertex_count(vertex_count)
    generators = dihedral_generators(k)
    specs = [
        OrbitSpec(generators, (1, 2, j, j + 1), expected_length=2 * k)
        for j in range(3, k + 1)
    ]
    specs.append(OrbitSpec(generators, (1, 2, k + 1, k + 2), expected_length=k))
    complex_ = union_of_orbits(specs, degree=vertex_count)

    expected_facets = 2 * k * (k - 2) + k
    if len(complex_) != expected_facets:
        raise ConstructionError(
            f"BdC4({vertex_count}) has {len(complex_)} facets, expected {expected_facets}"
        )
    return complex_


def gale_evenness_facets(vertex_count: int) -> frozenset[Face]:
    """Facets of the cyclic 4-polytope by Gale's evenness condition.

    A 4-set S is a facet iff any two labels outside S are separated by an even
    number of elements of S.
    """
    _half_vertex_count(vertex_count)
    labels = range(1, vertex_count + 1)
    facets = set()
    for subset in itertools.combinations(labels, 4):
        outside = [v for v in labels if v not in subset]
        if all(
            sum(1 for s in subset if i < s < j) % 2 == 0
            for i, j in itertools.combinations(outside, 2)
        ):
            facets.add(subset)
    return frozenset(facets)


def boundary_simplex(dimension: int) -> SimplicialComplex:
    if dimension < 1:
        raise ConstructionError(f"simplex boundary needs dimension >= 1, got {dimension}")
    return SimplicialComplex.from_facets(
        itertools.combinations(range(1, dimension + 3), dimension + 1)
    )


# Cylinders over the 4-vertex 2-sphere, facet lists as printed
CYLINDER_C1 = (
    (1, 2, 3, 5),
    (1, 2, 4, 5),
    (1, 3, 4, 5),
    (2, 3, 4, 6),
    (2, 3, 5, 6),
    (2, 4, 5, 6),
    (3, 4, 5, 7),
    (3, 4, 6, 7),
    (3, 5, 6, 7),
    (4, 5, 6, 8),
    (4, 5, 7, 8),
    (4, 6, 7, 8),
)
CYLINDER_C2 = (
    (1, 2, 3, 7),
    (1, 2, 4, 5),
    (1, 2, 5, 7),
    (1, 3, 4, 6),
    (1, 3, 6, 7),
    (1, 4, 5, 6),
    (1, 5, 6, 7),
    (2, 3, 4, 8),
    (2, 3, 7, 8),
    (2, 4, 5, 8),
    (2, 5, 7, 8),
    (3, 4, 6, 8),
    (3, 6, 7, 8),
    (4, 5, 6, 8),
)

GRUENBAUM_SYMMETRY = (
    Permutation.parse("(1,4,7,6,9,2)(3,10)(5,8)"),
    Permutation.parse("(1,7,3,9)(2,8,4,6)"),
)
TWISTED_SYMMETRY = (Permutation((tuple(range(1, 16)),)),)
TWISTED_SEEDS = ((1, 2, 3, 5), (1, 2, 3, 12), (1, 2, 4, 6), (1, 2, 5, 7), (1, 2, 6, 7))


def _verified(
    complex_: SimplicialComplex, name: str, neighborly: bool = False
) -> SimplicialComplex:
    check = is_combinatorial_3_manifold(complex_)
    if not check.is_closed_manifold:
        raise ConstructionError(
            f"{name} is not a closed combinatorial 3-manifold: {check.certificate}"
        )
    if neighborly and not is_k_neighborly(complex_, 2):
        raise ConstructionError(f"{name} is not 2-neighborly")
    return complex_


def _bounded(facets: Sequence[Face], name: str) -> SimplicialComplex:
    complex_ = SimplicialComplex.from_facets(facets)
    check = is_combinatorial_3_manifold(complex_)
    if not check.bounded_manifold:
        raise ConstructionError(
            f"{name} is not a bounded combinatorial 3-manifold: {check.certificate}"
        )
    return complex_


def parse_builtin_name(name: str) -> BuiltinSpec:
    match = _BUILTIN_NAME.match(name.strip())
    if not match:
        raise ConstructionError(f"unknown builtin complex {name!r}")

    family = match["family"].lower()
    if family in ("bdc4", "cyclic"):
        if match["colon"]:
            k = int(match["colon"])
        elif match["paren"]:
            k = _half_vertex_count(int(match["paren"]))
        else:
            raise ConstructionError("bdC4 needs a parameter, e.g. bdC4:3 or bdC4(6)")
        if k < 3:
            raise ConstructionError(f"bdC4 needs k >= 3, got {k}")
        return BuiltinSpec("bdC4", k, dihedral_generators(k))
    if family == "boundary-simplex":
        dimension = int(match["colon"] or match["paren"] or 3)
        n = dimension + 2
        rotation = Permutation((tuple(range(1, n + 1)),))
        return BuiltinSpec("boundary-simplex", dimension, (rotation, Permutation(((1, 2),))))
    if match["colon"] or match["paren"]:
        raise ConstructionError(f"builtin {match['family']!r} takes no parameter")
    if family == "c1":
        return BuiltinSpec("C1")
    if family == "c2":
        return BuiltinSpec("C2")
    if family == "gruenbaum-sphere-10":
        return BuiltinSpec("gruenbaum-sphere-10", symmetry=GRUENBAUM_SYMMETRY)
    if family == "s2xs1-15":
        return BuiltinSpec("s2xs1-15", symmetry=TWISTED_SYMMETRY)
    raise ConstructionError(f"unknown builtin complex {name!r}")


@lru_cache(maxsize=None)
def builtin(name: str) -> SimplicialComplex:
    spec = parse_builtin_name(name)
    if spec.family == "bdC4":
        return _verified(cyclic_polytope_boundary(2 * spec.parameter), name, neighborly=True)
    if spec.family == "boundary-simplex":
        complex_ = boundary_simplex(spec.parameter)
        return _verified(complex_, name) if spec.parameter == 3 else complex_
    if spec.family == "C1":
        return _bounded(CYLINDER_C1, name)
    if spec.family == "C2":
        return _bounded(CYLINDER_C2, name)
    if spec.family == "gruenbaum-sphere-10":
        specs = [OrbitSpec(GRUENBAUM_SYMMETRY, (1, 2, 3, 4), expected_length=30)]
        return _verified(union_of_orbits(specs, degree=10), name)
    specs = [OrbitSpec(TWISTED_SYMMETRY, seed, expected_length=15) for seed in TWISTED_SEEDS]
    complex_ = union_of_orbits(specs, degree=15)
    if len(complex_) != 75:
        raise ConstructionError(f"{name} has {len(complex_)} tetrahedra, expected 75")
    return _verified(complex_, name)


def builtin_symmetry(name: str) -> tuple[Permutation, ...]:
    return parse_builtin_name(name).symmetry


def list_builtins() -> tuple[str, ...]:
    return (
        "boundary-simplex:3",
        "bdC4:3",
        "bdC4:4",
        "bdC4:5",
        "bdC4:6",
        "C1",
        "C2",
        "gruenbaum-sphere-10",
        "s2xs1-15",
    )


def is_automorphism(complex_: SimplicialComplex, permutation: Permutation) -> bool:
    return relabel(complex_, permutation) == complex_
