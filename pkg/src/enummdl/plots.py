"""SVG figures for experiment results (presentation only)."""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import matplotlib

matplotlib.use("svg")
import matplotlib.pyplot as plt  # noqa: E402

from .experiments import ExperimentResult  # noqa: E402

# experiment -> (x parameter, y metrics, log-x, log-y)
LAYOUT: Dict[str, Tuple[str, Sequence[str], bool, bool]] = {
    "complexity_curve": ("n", ("comp_enum", "comp_nml_exact", "comp_rissanen", "comp_szpankowski", "bic"),
                         True, False),
    "expected_length": ("n", ("overhead_bits",), True, False),
    "percent_compressible": ("n", ("fraction",), True, True),
    "icdf": ("rate", ("tail_prob",), False, True),
    "bias_detection": ("n", ("prob",), False, False),
    "thresholds": ("theta_bias", ("lower", "upper"), False, True),
    "classification": ("n", ("acc",), True, False),
    "comp_ratio": ("n", ("ratio",), True, False),
    "compressible_ratio": ("n", ("ratio",), True, False),
}


def _series(rows: List[ExperimentResult], x_key: str, y_key: str):
    groups = defaultdict(list)
    for r in rows:
        fixed = tuple((k, v) for k, v in r.parameters.items() if k != x_key)
        x = r.parameters.get(x_key, r.metrics.get(x_key))
        y = r.metrics.get(y_key)
        if x is None or y is None:
            continue
        groups[fixed].append((x, y))
    return groups


# experiments drawn as one panel per value of this parameter
PANELS = {"complexity_curve": "m", "expected_length": "m", "thresholds": "m"}


def plot_experiment(exp_id: str, rows: List[ExperimentResult], path: "str | Path") -> Path:
    x_key, y_keys, logx, logy = LAYOUT[exp_id]
    panel_key = PANELS.get(exp_id)
    panel_values = sorted({r.parameters[panel_key] for r in rows}) if panel_key else [None]
    fig, axes = plt.subplots(1, len(panel_values), figsize=(5.5 * len(panel_values), 4.5), squeeze=False)
    for ax, pv in zip(axes[0], panel_values):
        subset = [r for r in rows if pv is None or r.parameters[panel_key] == pv]
        for y_key in y_keys:
            groups = _series(subset, x_key, y_key)
            for fixed, pts in sorted(groups.items(), key=lambda kv: str(kv[0])):
                pts.sort()
                xs, ys = zip(*pts)
                label = ", ".join(f"{k}={v}" for k, v in fixed if k != panel_key)
                if len(y_keys) > 1:
                    label = f"{y_key} ({label})" if label else y_key
                ax.plot(xs, ys, label=label or None, linewidth=1.2)
        if logx:
            ax.set_xscale("log")
        if logy:
            ax.set_yscale("log")
        ax.set_xlabel(x_key)
        ax.set_ylabel(y_keys[0] if len(y_keys) == 1 else "value")
        title = exp_id.replace("_", " ")
        ax.set_title(f"{title}, {panel_key}={pv}" if panel_key else title)
        ax.grid(True, alpha=0.3)
        if ax.get_legend_handles_labels()[0]:
            ax.legend(fontsize=7, loc="best")
    fig.tight_layout()
    path = Path(path)
    # no date or creator fields, so reruns produce the same file
    fig.savefig(path, format="svg", metadata={"Date": None, "Creator": None})
    plt.close(fig)
    return path
