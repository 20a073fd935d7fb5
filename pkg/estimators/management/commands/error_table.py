from django.conf import settings

from estimators.exceptions import BudgetExceededError, PreconditionError
from estimators.management.base import AnalysisCommand
from estimators.services import table_csv, table_report


class Command(AnalysisCommand):
    help = "Certified minimax error of every nonempty R-estimator for d = 2..d_max."
    formats = ("csv", "json")
    default_format = "csv"
    manifest_keys = ("d_max", "format")

    def add_arguments(self, parser):
        parser.add_argument("--d-max", type=int, default=4, help="Largest dimension in the table")
        super().add_arguments(parser)

    def build(self, options):
        d_max = options["d_max"]
        cap = settings.MAXPOOL_ANALYSIS["TABLE_D_MAX"]
        if d_max < 2:
            raise PreconditionError(f"--d-max must be at least 2, got {d_max}.")
        if d_max > cap:
            raise BudgetExceededError(d_max, cap, "as d_max")
        return {"d_max": d_max, "rows": table_report(d_max)}

    def render_csv(self, report, options):
        return table_csv(report["rows"])
