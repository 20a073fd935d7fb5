from estimators.management.base import AnalysisCommand, parse_index_list
from estimators.services import fit_report


class Command(AnalysisCommand):
    help = "Exact minimax-optimal R-estimator for the max over [0, 1]^d, with its LP certificate."
    manifest_keys = ("d", "r")

    def add_arguments(self, parser):
        parser.add_argument("--d", type=int, required=True, help="Input dimension")
        parser.add_argument("--r", required=True, help='Orders in R, e.g. "0,8"')
        super().add_arguments(parser)

    def build(self, options):
        return fit_report(options["d"], parse_index_list(options["r"]))
