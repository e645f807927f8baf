import sys

from django.core.management.base import BaseCommand
from django.core.management.base import CommandError

from normalsurf.slicing.exceptions import SlicingError

USAGE_ERROR = 1
DATA_ERROR = 2
ALARM = 3


def _usage_error(parser, message):
    # argparse would exit with 2, which is reserved for bad input data
    if parser.called_from_command_line:
        parser.print_usage(sys.stderr)
        parser.exit(USAGE_ERROR, f"{parser.prog}: error: {message}\n")
    raise CommandError(f"Error: {message}", returncode=USAGE_ERROR)


def parse_labels(text: str) -> list[int]:
    try:
        labels = [int(token) for token in text.replace(" ", "").split(",") if token]
    except ValueError:
        raise CommandError(f"cannot read vertex list {text!r}", returncode=USAGE_ERROR)
    if not labels:
        raise CommandError("empty vertex list", returncode=USAGE_ERROR)
    return labels


def parse_range(text: str) -> tuple[int, int]:
    low, _, high = text.partition(":")
    try:
        return int(low), int(high or low)
    except ValueError:
        raise CommandError(f"cannot read range {text!r}, expected s1:s2", returncode=USAGE_ERROR)


class SlicingCommand(BaseCommand):
    """Runs `run()` and maps library errors onto the data-error exit code."""

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        parser.error = lambda message: _usage_error(parser, message)
        return parser

    def handle(self, *args, **options):
        try:
            self.run(*args, **options)
        except SlicingError as exc:
            raise CommandError(str(exc), returncode=DATA_ERROR) from exc
        except OSError as exc:
            raise CommandError(f"{exc.filename}: {exc.strerror}", returncode=DATA_ERROR) from exc

    def run(self, *args, **options):
        raise NotImplementedError

    def emit(self, text: str) -> None:
        self.stdout.write(text, ending="")
