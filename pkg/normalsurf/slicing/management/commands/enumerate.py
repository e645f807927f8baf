from django.core.management.base import CommandError

from normalsurf import settings
from normalsurf.slicing.constructors import Permutation
from normalsurf.slicing.constructors import builtin_symmetry
from normalsurf.slicing.formats import load_complex
from normalsurf.slicing.formats import read_text_file
from normalsurf.slicing.formats import render_search_table
from normalsurf.slicing.formats import render_search_tsv
from normalsurf.slicing.management.base import ALARM
from normalsurf.slicing.management.base import USAGE_ERROR
from normalsurf.slicing.management.base import SlicingCommand
from normalsurf.slicing.management.base import parse_range
from normalsurf.slicing.search import SearchSpec
from normalsurf.slicing.search import enumerate_slicings
from normalsurf.slicing.search import find_weakly_neighborly


def read_generators(source: str, complex_name: str) -> tuple[Permutation, ...]:
    """Generators from a file, one permutation per line, or `builtin` for the named complex."""
    if source == "builtin":
        return builtin_symmetry(complex_name)
    text = read_text_file(source)
    return tuple(
        Permutation.parse(line)
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    )


class Command(SlicingCommand):
    help = "Enumerate the slicings of a complex, one row per canonical partition."

    def add_arguments(self, parser):
        parser.add_argument("complex", help="facet-list file or builtin name")
        parser.add_argument("--sizes", help="s1:s2, size range of the smaller part")
        parser.add_argument(
            "--wn-only", action="store_true", help="weakly neighborly slicings only"
        )
        parser.add_argument("--connected", action="store_true", help="connected slicings only")
        parser.add_argument("--quads", help="q1:q2, quadrilateral count range")
        parser.add_argument(
            "--sym",
            help="file of generators in cycle notation, or 'builtin' for a builtin's own",
        )
        parser.add_argument("--jobs", type=int, default=settings.SEARCH_JOBS)
        parser.add_argument("--format", choices=("tsv", "table"), default="tsv")
        parser.add_argument(
            "--homology", action="store_true", help="include the Betti-number checks"
        )

    def run(self, **options):
        complex_ = load_complex(options["complex"])
        if options["jobs"] < 1:
            raise CommandError("--jobs must be at least 1", returncode=USAGE_ERROR)

        spec = SearchSpec(
            complex_,
            sizes=parse_range(options["sizes"]) if options["sizes"] else None,
            connected_only=options["connected"],
            quad_range=parse_range(options["quads"]) if options["quads"] else None,
            symmetry=read_generators(options["sym"], options["complex"]) if options["sym"] else (),
            jobs=options["jobs"],
            homology=options["homology"],
        )
        search = find_weakly_neighborly if options["wn_only"] else enumerate_slicings
        result = search(spec)

        render = render_search_table if options["format"] == "table" else render_search_tsv
        self.emit(render(result))
        if result.alarms:
            raise CommandError(
                f"{result.alarms} proved statements reported violated", returncode=ALARM
            )
