from normalsurf.slicing.bounds import bound_report
from normalsurf.slicing.formats import load_complex
from normalsurf.slicing.formats import render_report
from normalsurf.slicing.formats import render_stats
from normalsurf.slicing.formats import write_off
from normalsurf.slicing.management.base import SlicingCommand
from normalsurf.slicing.management.base import parse_labels
from normalsurf.slicing.slicing import VertexPartition
from normalsurf.slicing.slicing import is_weakly_neighborly
from normalsurf.slicing.slicing import slice_complex
from normalsurf.slicing.slicing import surface_type


class Command(SlicingCommand):
    help = "Slice a complex between V1 and the remaining vertices."

    def add_arguments(self, parser):
        parser.add_argument("complex", help="facet-list file or builtin name")
        parser.add_argument("--v1", required=True, help="comma separated upper vertices")
        parser.add_argument("-o", "--output", help="write the slicing as polygonal OFF")
        parser.add_argument("--report", action="store_true", help="append the bound report")
        parser.add_argument(
            "--no-homology",
            action="store_true",
            help="leave the Betti-number checks out of the report",
        )

    def run(self, **options):
        complex_ = load_complex(options["complex"])
        partition = VertexPartition.from_upper(complex_, parse_labels(options["v1"]))
        slicing = slice_complex(complex_, partition)

        if options["report"]:
            report = bound_report(
                complex_, partition, slicing, homology=not options["no_homology"]
            )
            self.emit(render_report(report))
        else:
            weakly_neighborly = is_weakly_neighborly(slicing)
            self.emit(
                f"partition {partition}\n"
                f"{render_stats(slicing.statistics)}\n"
                f"type: {surface_type(slicing.statistics, weakly_neighborly)}\n"
            )

        if options["output"]:
            write_off(slicing, options["output"])
            self.stderr.write(f"wrote {options['output']}")
