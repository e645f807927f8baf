import pathlib

from normalsurf.slicing.constructors import builtin
from normalsurf.slicing.constructors import list_builtins
from normalsurf.slicing.formats import render_complex
from normalsurf.slicing.management.base import SlicingCommand


class Command(SlicingCommand):
    help = "Write the facet list of a builtin complex, e.g. bdC4:4 or gruenbaum-sphere-10."

    def add_arguments(self, parser):
        parser.add_argument("name", help=f"one of {', '.join(list_builtins())}")
        parser.add_argument("-o", "--output", help="write to this file instead of stdout")

    def run(self, name, output=None, **options):
        text = render_complex(builtin(name), comment=name)
        if output:
            pathlib.Path(output).write_text(text, encoding="ascii")
            self.stderr.write(f"wrote {len(text.splitlines()) - 1} facets to {output}")
        else:
            self.emit(text)
