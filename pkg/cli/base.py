from django.core.management.base import BaseCommand, CommandError
from pydantic import ValidationError

from boundary_liouville.exceptions import BoundaryLiouvilleError
from cli.config import add_common_arguments, load_run_config
from cli.records import render
from structure_constants.contour import contour_override


class RunCommand(BaseCommand):
    """Common flags, config layering, record output and exit status.

    Subclasses implement ``run(config, options)`` and return the number of failed
    checks: 0 exits 0, anything else exits 1. Numerical and config errors exit 2.
    """

    name = None
    default_format = 'json'

    def add_arguments(self, parser):
        add_common_arguments(parser)

    def handle(self, *args, **options):
        try:
            config = load_run_config(self.name, options, self.default_format)
            with contour_override(config.contour):
                failures = self.run(config, options)
        except (BoundaryLiouvilleError, ValidationError, OSError) as error:
            raise CommandError(f"{type(error).__name__}: {error}", returncode=2) from error
        if failures:
            raise CommandError(f"{failures} check(s) failed", returncode=1)

    def run(self, config, options):
        raise NotImplementedError

    def emit(self, config, records):
        text = render(records, config.format)
        if config.output_path:
            with open(config.output_path, 'w', newline='', encoding='utf-8') as f:
                f.write(text)
            self.stderr.write(self.style.SUCCESS(f"wrote {len(records)} records to {config.output_path}"))
        else:
            self.stdout.write(text, ending='')

    def status(self, passed, message):
        self.stderr.write(self.style.SUCCESS(message) if passed else self.style.ERROR(message))
