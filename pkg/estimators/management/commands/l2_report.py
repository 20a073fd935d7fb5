from estimators.management.base import AnalysisCommand
from estimators.services import l2_report


class Command(AnalysisCommand):
    help = "Least-squares optimal full estimator and its mean squared error under the uniform law."
    manifest_keys = ("d", "samples")

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True, help="Input dimension")
        parser.add_argument("--samples", type=int, help="Also estimate the error by Monte Carlo")
        parser.add_argument("--seed", type=int, default=0, help="Seed for the Monte Carlo estimate")
        super().add_arguments(parser)

    def build(self, options):
        return l2_report(options["d"], samples=options["samples"], seed=options["seed"])
