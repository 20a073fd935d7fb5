"""
Shared plumbing for the analysis commands.

Subclasses implement ``build(options)`` returning a JSON-ready report and
optionally ``render_text``/``render_csv``. Output bytes depend only on the
command line: ``--record`` stores a RunManifest but never changes the output.
"""
import logging
from pathlib import Path

from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ParseError, ValidationError
from rest_framework.renderers import JSONRenderer

from estimators.exceptions import AnalysisError
from estimators.services import manifest_block, record_run

logger = logging.getLogger(__name__)

USAGE_ERROR = 2
CHECK_FAILED = 1


def parse_index_list(text):
    """ "0,8" -> (0, 8)."""
    try:
        return tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise CommandError(f"Expected a comma-separated list of integers, got {text!r}.", returncode=USAGE_ERROR)


class AnalysisCommand(BaseCommand):
    formats = ("json",)
    default_format = "json"
    manifest_keys = ()

    def add_arguments(self, parser):
        parser.add_argument("--format", choices=self.formats, default=self.default_format, help="Output format")
        parser.add_argument("--out", help="Write output to this file instead of standard output")
        parser.add_argument("--record", action="store_true", help="Persist a RunManifest for this run")

    def build(self, options):
        raise NotImplementedError

    def render_json(self, report, manifest):
        payload = {**report, "manifest": manifest}
        return JSONRenderer().render(payload, renderer_context={"indent": 2}).decode("utf-8") + "\n"

    def render_text(self, report, options):
        raise NotImplementedError

    def render_csv(self, report, options):
        raise NotImplementedError

    def parameters(self, options):
        return {key: options.get(key) for key in self.manifest_keys}

    def handle(self, *args, **options):
        command = self.__module__.rsplit(".", 1)[-1]
        parameters = self.parameters(options)
        seed = options.get("seed")
        try:
            report = self.build(options)
        except (AnalysisError, ValidationError, ParseError) as exc:
            raise CommandError(str(getattr(exc, "detail", exc)), returncode=USAGE_ERROR) from exc

        fmt = options["format"]
        if fmt == "json":
            output = self.render_json(report, manifest_block(command, parameters, seed))
        elif fmt == "csv":
            output = self.render_csv(report, options)
        else:
            output = self.render_text(report, options) + "\n"

        outputs = []
        if options.get("out"):
            Path(options["out"]).write_text(output, encoding="utf-8")
            outputs.append(options["out"])
            self.stdout.write(self.style.SUCCESS(f"Wrote {options['out']}."))
        else:
            self.stdout.write(output, ending="")

        if options.get("record"):
            record_run(command, parameters, seed, outputs)
        self.after_output(report)

    def after_output(self, report):
        """Hook for commands whose exit status depends on the report."""
