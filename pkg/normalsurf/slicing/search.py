import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from dataclasses import field
from dataclasses import replace
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable
from typing import Iterator
from typing import Optional
from typing import Sequence

from joblib import delayed
from joblib import Parallel
from sympy.combinatorics import PermutationGroup

from normalsurf import settings
from normalsurf.slicing.bounds import BoundReport
from normalsurf.slicing.bounds import Verdict
from normalsurf.slicing.bounds import bound_report
from normalsurf.slicing.bounds import check_quadrangulated_bound
from normalsurf.slicing.bounds import quadrangulated_side
from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.complexes import faces
from normalsurf.slicing.complexes import is_combinatorial_3_manifold
from normalsurf.slicing.complexes import ridge_degrees
from normalsurf.slicing.constructors import Permutation
from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.constructors import builtin_symmetry
from normalsurf.slicing.constructors import is_automorphism
from normalsurf.slicing.exceptions import SearchError
from normalsurf.slicing.slicing import SlicingStats
from normalsurf.slicing.slicing import VertexPartition
from normalsurf.slicing.slicing import is_weakly_neighborly
from normalsurf.slicing.slicing import slice_complex
from normalsurf.slicing.slicing import surface_type

logger = logging.getLogger(__name__)

CLASSIFICATION_LIBRARY = (
    "boundary-simplex:3",
    "bdC4:3",
    "bdC4:4",
    "gruenbaum-sphere-10",
    "s2xs1-15",
)


@dataclass(frozen=True)
class SearchSpec:
    complex_: SimplicialComplex
    # bounds on the size of the smaller part
    sizes: Optional[tuple[int, int]] = None
    connected_only: bool = False
    genus_range: Optional[tuple[Fraction, Fraction]] = None
    quad_range: Optional[tuple[int, int]] = None
    weakly_neighborly_only: bool = False
    symmetry: tuple[Permutation, ...] = ()
    jobs: int = field(default_factory=lambda: settings.SEARCH_JOBS)
    chunk_size: int = field(default_factory=lambda: settings.SEARCH_CHUNK_SIZE)
    homology: bool = False

    def validate(self) -> None:
        f0 = len(self.complex_.vertices)
        if self.sizes is not None:
            low, high = self.sizes
            if not 0 < low <= high < f0:
                raise SearchError(f"part sizes {low}:{high} must satisfy 0 < s1 <= s2 < {f0}")
        elif f0 > settings.FULL_ENUMERATION_VERTEX_LIMIT:
            raise SearchError(
                f"{f0} vertices: a part-size range is required above "
                f"{settings.FULL_ENUMERATION_VERTEX_LIMIT} vertices"
            )
        if self.jobs < 1 or self.chunk_size < 1:
            raise SearchError("jobs and chunk size must be positive")
        for generator in self.symmetry:
            if not is_automorphism(self.complex_, generator):
                raise SearchError(f"{generator} is not an automorphism of the complex")


@dataclass(frozen=True)
class SearchRow:
    partition: VertexPartition
    stats: SlicingStats
    weakly_neighborly: bool
    surface_type: str
    digest: str
    alarms: int

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(sorted(self.partition.v1))


@dataclass(frozen=True)
class SearchResult:
    rows: tuple[SearchRow, ...]
    examined: int
    skipped_boundary: int = 0
    skipped_symmetric: int = 0

    @property
    def summary(self) -> list[tuple[str, int]]:
        return sorted(Counter(row.surface_type for row in self.rows).items())

    @property
    def alarms(self) -> int:
        return sum(row.alarms for row in self.rows)


def _group_images(
    complex_: SimplicialComplex, generators: Sequence[Permutation]
) -> list[list[int]]:
    """Index maps of every non-identity element of the generated group."""
    moving = [generator for generator in generators if generator.cycles]
    if not moving:
        return []
    vertices = complex_.vertices
    degree = max([vertices[-1]] + [generator.degree for generator in moving])
    index = {v: i for i, v in enumerate(vertices)}
    group = PermutationGroup([generator.to_sympy(degree) for generator in moving])
    images = []
    for element in group.generate():
        if element.is_Identity:
            continue
        array = element.array_form
        images.append([index[array[v - 1] + 1] for v in vertices])
    logger.debug("symmetry group of order %d", len(images) + 1)
    return images


class PartitionEvaluator:
    """Evaluates canonical partitions (bitmasks over sorted vertices) for one search."""

    def __init__(self, spec: SearchSpec):
        self.spec = spec
        complex_ = spec.complex_
        self.vertices = complex_.vertices
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.full = (1 << len(self.vertices)) - 1
        self.edges = [self.mask(face) for face in faces(complex_, 1)]
        self.triangles = [self.mask(face) for face in faces(complex_, 2)]
        self.tetrahedra = [self.mask(face) for face in complex_.tetrahedra]
        self.boundary_triangles = [
            self.mask(triangle)
            for triangle, count in ridge_degrees(complex_).items()
            if count == 1
        ]
        self.images = _group_images(complex_, spec.symmetry)

    def mask(self, labels: Iterable[int]) -> int:
        return sum(1 << self.index[v] for v in labels)

    def partition(self, mask: int) -> VertexPartition:
        v1 = frozenset(v for i, v in enumerate(self.vertices) if mask >> i & 1)
        return VertexPartition(v1, frozenset(self.vertices) - v1)

    def canonical(self, mask: int) -> int:
        return mask if mask & 1 else self.full ^ mask

    def is_orbit_minimum(self, mask: int) -> bool:
        bits = [i for i in range(len(self.vertices)) if mask >> i & 1]
        for image in self.images:
            if self.canonical(sum(1 << image[i] for i in bits)) < mask:
                return False
        return True

    def counts(self, mask: int) -> tuple[int, int, int, int]:
        n = sum(1 for edge in self.edges if (edge & mask).bit_count() == 1)
        e = sum(1 for triangle in self.triangles if 0 < (triangle & mask).bit_count() < 3)
        t = q = 0
        for tetrahedron in self.tetrahedra:
            inside = (tetrahedron & mask).bit_count()
            if inside == 2:
                q += 1
            elif inside in (1, 3):
                t += 1
        return n, e, t, q

    def evaluate(self, mask: int) -> tuple[Optional[SearchRow], str]:
        spec = self.spec
        if self.images and not self.is_orbit_minimum(mask):
            return None, "symmetric"
        if any(0 < (triangle & mask).bit_count() < 3 for triangle in self.boundary_triangles):
            logger.debug("mask %#x splits a boundary triangle", mask)
            return None, "boundary"

        n, e, t, q = self.counts(mask)
        genus = Fraction(2 - (n - e + t + q), 2)
        if spec.quad_range and not spec.quad_range[0] <= q <= spec.quad_range[1]:
            return None, "filtered"
        if spec.genus_range and not spec.genus_range[0] <= genus <= spec.genus_range[1]:
            return None, "filtered"
        if spec.weakly_neighborly_only and e != comb(n, 2) - 2 * q:
            return None, "filtered"

        partition = self.partition(mask)
        slicing = slice_complex(spec.complex_, partition)
        stats = slicing.statistics
        if spec.connected_only and not stats.is_connected:
            return None, "filtered"
        weakly_neighborly = is_weakly_neighborly(slicing)
        if spec.weakly_neighborly_only and not weakly_neighborly:
            logger.warning("%s passes the edge-count test but is not weakly neighborly", partition)
            return None, "filtered"

        report: BoundReport = bound_report(
            spec.complex_, partition, slicing, homology=spec.homology
        )
        row = SearchRow(
            partition=partition,
            stats=stats,
            weakly_neighborly=weakly_neighborly,
            surface_type=surface_type(stats, weakly_neighborly),
            digest=report.digest(),
            alarms=len(report.alarms),
        )
        return row, "kept"


def canonical_masks(vertex_count: int, sizes: Optional[tuple[int, int]] = None) -> Iterator[int]:
    """Partitions up to complementation: bit 0 (the smallest label) always sits in V1."""
    if sizes is None:
        yield from range(1, (1 << vertex_count) - 1, 2)
        return

    low, high = sizes
    upper_sizes = sorted(
        k
        for k in range(1, vertex_count)
        if low <= min(k, vertex_count - k) <= high
    )
    for k in upper_sizes:
        for rest in itertools.combinations(range(1, vertex_count), k - 1):
            yield 1 | sum(1 << i for i in rest)


def _chunks(masks: Iterable[int], size: int) -> Iterator[list[int]]:
    iterator = iter(masks)
    while chunk := list(itertools.islice(iterator, size)):
        yield chunk


# one evaluator per process, reused across the chunks of a search
@lru_cache(maxsize=1)
def _evaluator(spec: SearchSpec) -> PartitionEvaluator:
    return PartitionEvaluator(spec)


def _evaluate_chunk(spec: SearchSpec, masks: list[int]) -> tuple[list[SearchRow], Counter]:
    evaluator = _evaluator(spec)
    rows, outcomes = [], Counter()
    for mask in masks:
        row, outcome = evaluator.evaluate(mask)
        outcomes[outcome] += 1
        if row is not None:
            rows.append(row)
    return rows, outcomes


def _check_complex(complex_: SimplicialComplex, closed: bool = False) -> None:
    if not complex_.is_pure or complex_.dimension != 3:
        raise SearchError("searches need a pure 3-dimensional complex")
    check = is_combinatorial_3_manifold(complex_)
    if check.is_closed_manifold:
        return
    if closed or not check.bounded_manifold:
        raise SearchError(f"complex is not a combinatorial 3-manifold: {check.certificate}")


def enumerate_slicings(spec: SearchSpec) -> SearchResult:
    _check_complex(spec.complex_)
    spec.validate()

    f0 = len(spec.complex_.vertices)
    chunks = _chunks(canonical_masks(f0, spec.sizes), spec.chunk_size)
    rows: list[SearchRow] = []
    outcomes: Counter = Counter()

    results = Parallel(n_jobs=spec.jobs, return_as="generator")(
        delayed(_evaluate_chunk)(spec, chunk) for chunk in chunks
    )
    for chunk_rows, chunk_outcomes in results:
        rows.extend(chunk_rows)
        outcomes.update(chunk_outcomes)
        logger.info("examined %d partitions, kept %d", sum(outcomes.values()), len(rows))

    result = SearchResult(
        rows=tuple(sorted(rows, key=lambda row: row.key)),
        examined=sum(outcomes.values()),
        skipped_boundary=outcomes["boundary"],
        skipped_symmetric=outcomes["symmetric"],
    )
    logger.info(
        "search done: %d partitions, %d rows, %d skipped at the boundary, %d by symmetry",
        result.examined,
        len(result.rows),
        result.skipped_boundary,
        result.skipped_symmetric,
    )
    return result


def find_weakly_neighborly(spec: SearchSpec) -> SearchResult:
    _check_complex(spec.complex_, closed=True)
    return enumerate_slicings(replace(spec, weakly_neighborly_only=True))


@dataclass(frozen=True)
class LibraryClassification:
    results: dict[str, SearchResult]

    @property
    def surface_types(self) -> list[str]:
        return sorted(
            {row.surface_type for result in self.results.values() for row in result.rows}
        )


def classify_library(
    names: Sequence[str] = CLASSIFICATION_LIBRARY, jobs: Optional[int] = None
) -> LibraryClassification:
    results = {}
    for name in names:
        spec = SearchSpec(
            builtin(name),
            symmetry=builtin_symmetry(name),
            jobs=jobs or settings.SEARCH_JOBS,
        )
        results[name] = find_weakly_neighborly(spec)
        logger.info("%s: %d weakly neighborly slicings", name, len(results[name].rows))
    return LibraryClassification(results)


@dataclass(frozen=True)
class PublishedRow:
    v1: tuple[int, ...]
    genus: int
    n: int
    q: int


@dataclass(frozen=True)
class PublishedTable:
    complex_name: str
    rows: tuple[PublishedRow, ...]


# printed values, including the entries our computation disagrees with
PUBLISHED_TABLES = {
    "gruenbaum-sphere-10": PublishedTable(
        "gruenbaum-sphere-10",
        (
            PublishedRow((1,), 0, 1, 0),
            PublishedRow((1, 3), 0, 2, 3),
            PublishedRow((1, 3, 5), 1, 3, 9),
            PublishedRow((1, 3, 5, 7), 4, 3, 18),
            PublishedRow((1, 3, 5, 7, 9), 5, 6, 30),
        ),
    ),
    "s2xs1-15": PublishedTable(
        "s2xs1-15",
        (
            PublishedRow((1, 4, 7), 1, 3, 9),
            PublishedRow((1, 4, 7, 10), 3, 4, 18),
            PublishedRow((1, 4, 7, 10, 13), 6, 5, 30),
        ),
    ),
}

DEFAULT_FAMILIES = {
    "boundary-simplex:3": ((1,), (1, 2)),
}


@dataclass(frozen=True)
class ExtremalRow:
    partition: VertexPartition
    genus: Fraction
    n: Optional[int]
    q: int
    verdict: Verdict
    published: Optional[PublishedRow]
    mismatches: tuple[str, ...]


@dataclass(frozen=True)
class ExtremalTable:
    complex_name: str
    rows: tuple[ExtremalRow, ...]

    @property
    def discrepancies(self) -> list[tuple[ExtremalRow, str]]:
        return [(row, column) for row in self.rows for column in row.mismatches]


def published_family(name: str) -> tuple[tuple[int, ...], ...]:
    if name in PUBLISHED_TABLES:
        return tuple(row.v1 for row in PUBLISHED_TABLES[name].rows)
    if name in DEFAULT_FAMILIES:
        return DEFAULT_FAMILIES[name]
    raise SearchError(f"no published family for {name!r}")


def extremal_table(
    complex_: SimplicialComplex,
    family: Sequence[Iterable[int]],
    published: Optional[PublishedTable] = None,
    complex_name: str = "",
) -> ExtremalTable:
    """Computed (g, n, q) per partition, diffed against the printed table when given."""
    printed = {row.v1: row for row in published.rows} if published else {}
    rows = []
    for upper in family:
        partition = VertexPartition.from_upper(complex_, upper)
        slicing = slice_complex(complex_, partition)
        stats = slicing.statistics
        side = quadrangulated_side(complex_, partition, stats.genus)
        n = len(partition.v1 if side == 1 else partition.v2) if side else None

        row_published = printed.get(tuple(sorted(partition.v1)))
        mismatches = []
        if row_published:
            for column, computed, expected in (
                ("g", stats.genus, row_published.genus),
                ("n", n, row_published.n),
                ("q", stats.q, row_published.q),
            ):
                if computed != expected:
                    mismatches.append(column)
                    logger.info(
                        "%s %s: computed %s = %s, printed %s",
                        complex_name,
                        partition,
                        column,
                        computed,
                        expected,
                    )

        rows.append(
            ExtremalRow(
                partition=partition,
                genus=stats.genus,
                n=n,
                q=stats.q,
                verdict=check_quadrangulated_bound(complex_, partition, slicing).verdict,
                published=row_published,
                mismatches=tuple(mismatches),
            )
        )
    return ExtremalTable(complex_name, tuple(rows))
