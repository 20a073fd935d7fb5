from django.core.management.base import CommandError

from estimators.management.base import CHECK_FAILED, AnalysisCommand
from estimators.verification import SUITES, VerifyConfig, run_suite


class Command(AnalysisCommand):
    help = "Run a named verification suite; exits with status 1 if any check fails."
    manifest_keys = ("suite", "d_max", "samples")

    def add_arguments(self, parser):
        parser.add_argument("--suite", choices=["all", *SUITES], default="all", help="Suite to run")
        parser.add_argument("--d-max", type=int, help="Override the suite's dimension range")
        parser.add_argument("--samples", type=int, help="Override the suite's sample counts")
        parser.add_argument("--seed", type=int, default=0, help="Seed for sampled checks")
        super().add_arguments(parser)

    def build(self, options):
        config = VerifyConfig(d_max=options["d_max"], samples=options["samples"], seed=options["seed"])
        checks = run_suite(options["suite"], config)
        failed = sum(1 for c in checks if not c.passed)
        return {
            "suite": options["suite"],
            "passed": len(checks) - failed,
            "failed": failed,
            "checks": [c.as_dict() for c in checks],
        }

    def after_output(self, report):
        if report["failed"]:
            raise CommandError(f"{report['failed']} check(s) failed.", returncode=CHECK_FAILED)
