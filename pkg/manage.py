#!/usr/bin/env python
import os
import sys


def main():
    """Run the slicing commands (construct, info, slice, verify, enumerate, table)."""
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "normalsurf.settings")
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Django is missing; install the stack with `pip install -r requirements.txt`."
        ) from exc
    execute_from_command_line(sys.argv)


if __name__ == "__main__":
    main()
