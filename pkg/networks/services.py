from estimators.exact import decimal_value, format_rational

from .builders import GADGET_UNITS, d1_estimator_network, full_estimator_widths, heaviside_gate, pairwise_max_network
from .relu import forward
from .schedule import tuple_schedule, width_schedule


def build_network(kind, d, xi=0):
    if kind == "pairwise":
        return pairwise_max_network(d)
    if kind == "d1":
        return d1_estimator_network(d)
    if kind == "heaviside":
        return heaviside_gate(d, xi)
    raise ValueError(f"Unknown network kind {kind!r}.")


def evaluate_network(net, x):
    output = forward(net, x)
    return {
        "output": [format_rational(v) for v in output],
        "decimal": [decimal_value(v) for v in output],
    }


def _render_tuple(indices):
    return " ".join(str(i) for i in indices)


def widths_report(d):
    widths = width_schedule(d)
    schedule = tuple_schedule(d)
    full = full_estimator_widths(d)
    return {
        "d": d,
        "depth": widths.depth,
        "value_widths": list(widths.widths),
        "relu_widths": [GADGET_UNITS * w for w in widths.widths],
        "repeated_counts": [schedule.repeated_count(j) for j in range(1, schedule.depth + 1)],
        "full_estimator_widths": list(full),
        "full_estimator_subpool_maxes": d + sum(full),
        "split_tables": {
            str(j): [[_render_tuple(t) for t in row] for row in schedule.split_table(j)]
            for j in range(1, schedule.depth + 1)
        },
    }


def split_table_text(report):
    """Human-readable split tables, deepest layer first."""
    lines = [f"d={report['d']} depth={report['depth']} value widths {report['value_widths']}"]
    for j in sorted(report["split_tables"], key=int, reverse=True):
        width = report["value_widths"][int(j) - 1]
        repeated = report["repeated_counts"][int(j) - 1]
        lines.append("")
        lines.append(f"layer {j}: {width} tuples, {repeated} repeated + {width - repeated} unique")
        for row in report["split_tables"][j]:
            lines.append(" | ".join(f"({t})" for t in row))
    return "\n".join(lines)
