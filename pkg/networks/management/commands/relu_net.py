from pathlib import Path

from django.core.management.base import CommandError

from estimators.exact import parse_rational
from estimators.management.base import USAGE_ERROR, AnalysisCommand
from networks.serializers import MIN_DIMENSION, NETWORK_KINDS, network_from_json, network_to_json
from networks.services import build_network, evaluate_network


class Command(AnalysisCommand):
    help = "Build, evaluate or re-export exact ReLU max networks."
    manifest_keys = ("action", "kind", "d", "xi", "network", "x")

    def add_arguments(self, parser):
        parser.add_argument("action", choices=("build", "eval", "export"))
        parser.add_argument("--kind", choices=NETWORK_KINDS, help="Network family to build")
        parser.add_argument("--d", type=int, help="Input dimension")
        parser.add_argument("--xi", default="0", help="Threshold of the heaviside gate")
        parser.add_argument("--network", help="Network JSON file to read (eval, export)")
        parser.add_argument("--x", help='Input vector for eval, e.g. "1,0,0" or "1/3,2/5"')
        parser.add_argument("--with-f64", action="store_true", help="Add advisory float weights to the JSON (kept on export when the input has them)")
        super().add_arguments(parser)

    def _network(self, options):
        if options["network"]:
            try:
                raw = Path(options["network"]).read_bytes()
            except OSError as exc:
                raise CommandError(f"Cannot read {options['network']}: {exc}", returncode=USAGE_ERROR)
            net = network_from_json(raw)
            # Weights are "p/q" strings, so the key can only appear as a field name.
            self.source_has_f64 = b'"weights_f64"' in raw
            return net
        kind, d = options["kind"], options["d"]
        if kind is None or d is None:
            raise CommandError("Give --network FILE or both --kind and --d.", returncode=USAGE_ERROR)
        if d < MIN_DIMENSION[kind]:
            raise CommandError(f"{kind} networks need d >= {MIN_DIMENSION[kind]}.", returncode=USAGE_ERROR)
        return build_network(kind, d, parse_rational(options["xi"]))

    def build(self, options):
        action = options["action"]
        self.source_has_f64 = False
        if action == "export" and not options["network"]:
            raise CommandError("export needs --network FILE.", returncode=USAGE_ERROR)
        net = self._network(options)
        if action == "eval":
            if not options["x"]:
                raise CommandError("eval needs --x.", returncode=USAGE_ERROR)
            x = [parse_rational(part) for part in options["x"].split(",")]
            return {"input": [part.strip() for part in options["x"].split(",")], **evaluate_network(net, x)}
        return {"network": net, "with_f64": options["with_f64"] or self.source_has_f64}

    def render_json(self, report, manifest):
        if "network" in report:
            return network_to_json(report["network"], with_f64=report["with_f64"]).decode("utf-8") + "\n"
        return super().render_json(report, manifest)
