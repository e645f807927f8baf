import logging
import pathlib
from typing import Optional
from typing import Union

import networkx as nx
import numpy as np

from normalsurf import settings
from normalsurf.slicing.bounds import BoundReport
from normalsurf.slicing.complexes import SimplicialComplex
from normalsurf.slicing.complexes import one_skeleton
from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.exceptions import ConstructionError
from normalsurf.slicing.exceptions import FormatError
from normalsurf.slicing.search import ExtremalTable
from normalsurf.slicing.search import SearchResult
from normalsurf.slicing.slicing import Slicing
from normalsurf.slicing.slicing import SlicingStats

logger = logging.getLogger(__name__)


def parse_complex(text: str) -> SimplicialComplex:
    """Facet list: one facet per line, '#' starts a comment line."""
    facets = []
    seen = set()
    arity = None
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue

        labels = []
        for token in line.split():
            try:
                label = int(token)
            except ValueError:
                raise FormatError(f"non-integer token {token!r}", line_number) from None
            if label < 1:
                raise FormatError(f"vertex label {label} is not positive", line_number)
            labels.append(label)

        if arity is None:
            arity = len(labels)
        elif len(labels) != arity:
            raise FormatError(
                f"facet has {len(labels)} labels, earlier facets have {arity}", line_number
            )
        facet = tuple(sorted(labels))
        if len(set(facet)) != len(facet):
            raise FormatError(f"facet {facet} repeats a vertex", line_number)
        if facet in seen:
            logger.warning("line %d: duplicate facet %s dropped", line_number, facet)
            continue
        seen.add(facet)
        facets.append(facet)

    if not facets:
        raise FormatError("document lists no facets")
    return SimplicialComplex.from_facets(facets)


def render_complex(complex_: SimplicialComplex, comment: Optional[str] = None) -> str:
    lines = [f"# {comment}"] if comment else []
    lines += [" ".join(map(str, facet)) for facet in sorted(complex_.facets)]
    return "\n".join(lines) + "\n"


def read_text_file(path: Union[str, pathlib.Path]) -> str:
    try:
        return pathlib.Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise FormatError(f"{path}: not an ASCII text file (byte {exc.start})") from exc


def load_complex(source: Union[str, pathlib.Path]) -> SimplicialComplex:
    """A facet-list file, or failing that a builtin name."""
    path = pathlib.Path(source)
    if path.is_file():
        return parse_complex(read_text_file(path))
    try:
        return builtin(str(source))
    except ConstructionError as exc:
        raise FormatError(f"{source!r} is neither a readable file nor a builtin ({exc})") from exc


def spectral_layout(complex_: SimplicialComplex) -> dict[int, tuple[float, float, float]]:
    """Unit vectors from the first three nontrivial Laplacian eigenvectors of the 1-skeleton.

    Each eigenvector is signed so its largest-magnitude entry is positive;
    missing eigenvectors (fewer than four vertices) are padded with zeros.
    """
    vertices = complex_.vertices
    adjacency = nx.to_numpy_array(one_skeleton(complex_), nodelist=vertices)
    laplacian = np.diag(adjacency.sum(axis=1)) - adjacency
    _, eigenvectors = np.linalg.eigh(laplacian)

    columns = eigenvectors[:, 1:4]
    coordinates = np.zeros((len(vertices), 3))
    coordinates[:, : columns.shape[1]] = columns
    for j in range(columns.shape[1]):
        column = coordinates[:, j]
        if column[np.argmax(np.abs(column))] < 0:
            coordinates[:, j] = -column

    norms = np.linalg.norm(coordinates, axis=1)
    norms[norms == 0] = 1.0
    coordinates /= norms[:, np.newaxis]
    return {v: tuple(float(x) for x in row) for v, row in zip(vertices, coordinates)}


def _coordinate(value: float, digits: int) -> str:
    text = f"{value:.{digits}f}"
    return text[1:] if text.startswith("-") and float(text) == 0 else text


def render_off(slicing: Slicing, digits: Optional[int] = None) -> str:
    """Polygonal OFF; slicing vertices sit at the midpoints of their ambient edges."""
    if digits is None:
        digits = settings.OFF_COORDINATE_DIGITS
    slicing.statistics  # closed slicings only

    layout = spectral_layout(slicing.ambient)
    position = {vertex: index for index, vertex in enumerate(slicing.vertices)}
    lines = ["OFF", f"{len(slicing.vertices)} {len(slicing.facets)} 0"]
    for vertex in slicing.vertices:
        upper, lower = layout[vertex.upper], layout[vertex.lower]
        lines.append(
            " ".join(_coordinate((a + b) / 2, digits) for a, b in zip(upper, lower))
        )
    for facet in slicing.facets:
        indices = [str(position[vertex]) for vertex in facet.boundary]
        lines.append(" ".join([str(len(indices))] + indices))
    return "\n".join(lines) + "\n"


def write_off(slicing: Slicing, path: Union[str, pathlib.Path]) -> None:
    text = render_off(slicing)
    try:
        pathlib.Path(path).write_text(text, encoding="ascii")
    except OSError as exc:
        raise FormatError(f"cannot write {path}: {exc.strerror or exc}") from exc


def render_stats(stats: SlicingStats) -> str:
    orientation = "orientable" if stats.orientable else "non-orientable"
    return (
        f"f = ({stats.n},{stats.e},{stats.t},{stats.q})  chi = {stats.chi}  "
        f"{orientation}  g = {stats.genus}  components = {stats.components}  "
        f"vertex-linking = {stats.vertex_linking_components}"
    )


def render_report(report: BoundReport) -> str:
    lines = [
        f"partition {report.partition}",
        render_stats(report.stats),
        f"weakly neighborly: {'yes' if report.weakly_neighborly else 'no'}",
    ]
    lines += [str(record) for record in report.records]
    if report.alarms:
        lines.append(f"ALARM: {len(report.alarms)} proved statements violated")
    if report.findings:
        lines.append(f"FINDING: {len(report.findings)} conjectured bounds violated")
    return "\n".join(lines) + "\n"


SEARCH_COLUMNS = (
    "v1",
    "v2",
    "n",
    "e",
    "t",
    "q",
    "chi",
    "orientable",
    "genus",
    "components",
    "weakly_neighborly",
    "surface",
    "bounds",
)


def _search_cells(result: SearchResult) -> list[list[str]]:
    rows = []
    for row in result.rows:
        stats = row.stats
        rows.append(
            [
                ",".join(map(str, sorted(row.partition.v1))),
                ",".join(map(str, sorted(row.partition.v2))),
                *(str(x) for x in stats.f_vector),
                str(stats.chi),
                "yes" if stats.orientable else "no",
                str(stats.genus),
                str(stats.components),
                "yes" if row.weakly_neighborly else "no",
                row.surface_type,
                row.digest,
            ]
        )
    return rows


def render_search_tsv(result: SearchResult) -> str:
    lines = ["\t".join(SEARCH_COLUMNS)]
    lines += ["\t".join(cells) for cells in _search_cells(result)]
    return "\n".join(lines) + "\n"


def render_search_table(result: SearchResult) -> str:
    header = list(SEARCH_COLUMNS[:-1])
    body = [cells[:-1] for cells in _search_cells(result)]
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in [header] + body
    ]
    lines.append("")
    lines.append(f"{result.examined} partitions examined, {len(result.rows)} slicings")
    for name, count in result.summary:
        lines.append(f"  {count:>6}  {name}")
    return "\n".join(lines) + "\n"


def render_extremal_table(table: ExtremalTable) -> str:
    header = ["slicing", "g", "n", "q", "bound", "printed g", "printed n", "printed q", "diff"]
    body = []
    for row in table.rows:
        printed = row.published
        body.append(
            [
                str(row.partition),
                str(row.genus),
                "-" if row.n is None else str(row.n),
                str(row.q),
                row.verdict.value,
                str(printed.genus) if printed else "-",
                str(printed.n) if printed else "-",
                str(printed.q) if printed else "-",
                ",".join(row.mismatches) or "-",
            ]
        )
    widths = [max(len(row[i]) for row in [header] + body) for i in range(len(header))]
    lines = [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in [header] + body
    ]
    return "\n".join(lines) + "\n"
