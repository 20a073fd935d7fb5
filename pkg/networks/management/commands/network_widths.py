from estimators.management.base import AnalysisCommand
from networks.services import split_table_text, widths_report


class Command(AnalysisCommand):
    help = "Layer widths for computing all order-(d-1) subpool maxes, with the per-layer split tables."
    formats = ("json", "text")
    manifest_keys = ("d",)

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True, help="Input dimension (at least 3)")
        super().add_arguments(parser)

    def build(self, options):
        return widths_report(options["d"])

    def render_text(self, report, options):
        return split_table_text(report)
