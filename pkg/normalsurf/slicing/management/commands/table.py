from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.formats import render_extremal_table
from normalsurf.slicing.management.base import SlicingCommand
from normalsurf.slicing.management.base import parse_labels
from normalsurf.slicing.search import PUBLISHED_TABLES
from normalsurf.slicing.search import extremal_table
from normalsurf.slicing.search import published_family


class Command(SlicingCommand):
    help = "Recompute a published slicing table and show where it differs."

    def add_arguments(self, parser):
        parser.add_argument("name", help="builtin complex, e.g. gruenbaum-sphere-10")
        parser.add_argument(
            "--v1",
            action="append",
            help="a partition of the family (repeatable); defaults to the published one",
        )

    def run(self, name, v1=None, **options):
        family = [parse_labels(text) for text in v1] if v1 else published_family(name)
        table = extremal_table(
            builtin(name), family, PUBLISHED_TABLES.get(name), complex_name=name
        )
        self.emit(render_extremal_table(table))
        if table.discrepancies:
            self.stderr.write(
                f"{len(table.discrepancies)} entries differ from the printed table"
            )
