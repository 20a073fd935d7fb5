from estimators.management.base import AnalysisCommand
from estimators.services import full_report


class Command(AnalysisCommand):
    help = "Closed-form {0, ..., d-1}-estimator and the error it achieves."
    manifest_keys = ("d",)

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True, help="Input dimension")
        super().add_arguments(parser)

    def build(self, options):
        return full_report(options["d"])
