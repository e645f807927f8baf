from django.core.management.base import CommandError

from normalsurf.slicing.bounds import bound_report
from normalsurf.slicing.formats import load_complex
from normalsurf.slicing.formats import render_report
from normalsurf.slicing.management.base import ALARM
from normalsurf.slicing.management.base import SlicingCommand
from normalsurf.slicing.management.base import parse_labels
from normalsurf.slicing.slicing import VertexPartition


class Command(SlicingCommand):
    help = (
        "Full bound report for one slicing. Exits with 3 when a proved statement "
        "or a conjectured bound fails."
    )

    def add_arguments(self, parser):
        parser.add_argument("complex", help="facet-list file or builtin name")
        parser.add_argument("--v1", required=True, help="comma separated upper vertices")
        parser.add_argument("--no-homology", action="store_true")

    def run(self, **options):
        complex_ = load_complex(options["complex"])
        partition = VertexPartition.from_upper(complex_, parse_labels(options["v1"]))
        report = bound_report(complex_, partition, homology=not options["no_homology"])
        self.emit(render_report(report))

        if report.alarms:
            keys = ", ".join(record.key for record in report.alarms)
            raise CommandError(f"violated: {keys}", returncode=ALARM)
        if report.findings:
            keys = ", ".join(record.key for record in report.findings)
            raise CommandError(f"conjectured bound fails: {keys}", returncode=ALARM)
