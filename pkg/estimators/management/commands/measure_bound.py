from django.conf import settings

from estimators.exact import parse_rational
from estimators.management.base import AnalysisCommand, parse_index_list
from estimators.services import measure_report


class Command(AnalysisCommand):
    help = "Lower bounds on the volume where an optimal estimator's error is at least eps, checked by sampling."
    manifest_keys = ("d", "r", "eps", "samples")

    def add_arguments(self, parser):
        analysis = settings.MAXPOOL_ANALYSIS
        parser.add_argument("--d", type=int, required=True, help="Input dimension")
        parser.add_argument("--r", required=True, help='Orders in R (must contain 0), e.g. "0,2"')
        parser.add_argument("--eps", help="Error threshold as a rational; defaults to err/4")
        parser.add_argument("--samples", type=int, default=analysis["DEFAULT_SAMPLES"], help="Uniform samples")
        parser.add_argument("--seed", type=int, default=analysis["DEFAULT_SEED"], help="Sampling seed")
        super().add_arguments(parser)

    def build(self, options):
        eps = parse_rational(options["eps"]) if options["eps"] is not None else None
        return measure_report(
            options["d"], parse_index_list(options["r"]), eps=eps,
            samples=options["samples"], seed=options["seed"],
        )
