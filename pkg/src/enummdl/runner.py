"""Experiment registry, parameter grids and deterministic CSV output."""
from __future__ import annotations

import csv
import io
import itertools
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Dict, Iterable, List, Optional, Sequence

import numpy as np

from . import experiments as ex
from .bernoulli import CodeId
from .compositions import partition_count

MISSING = "NA"


def log_grid(lo: int, hi: int, per_decade: int) -> List[int]:
    """Sorted distinct integers spread log-uniformly over ``[lo, hi]``."""
    count = int(math.ceil(per_decade * math.log10(hi / lo))) + 1
    pts = np.unique(np.round(np.logspace(math.log10(lo), math.log10(hi), count)).astype(int))
    return [int(p) for p in pts]


def _span(lo: int, hi: int) -> List[int]:
    return list(range(lo, hi + 1))


@dataclass
class Context:
    cache: object = None
    budget: int = ex.DEFAULT_BUDGET
    n_max: int = 10**5


@dataclass
class Experiment:
    params: Sequence[str]
    metrics: Sequence[str]
    run: Callable[[dict, Context], List[ex.ExperimentResult]]
    default_grid: List[dict]
    # which grid points walk the partition space (checked against the budget up front)
    traverses: Optional[Callable[[dict], bool]] = None
    finish: Optional[Callable[[List[ex.ExperimentResult]], None]] = None


def _row(exp_id, params, metrics):
    return [ex.ExperimentResult(exp_id, dict(params), dict(metrics))]


def _complexity(t, ctx):
    return _row("complexity_curve", t, ex.complexity_row(t["n"], t["m"]))


def _expected(t, ctx):
    v = ex.expected_overhead(t["code"], t["n"], t["m"], cache=ctx.cache, budget=ctx.budget)
    return _row("expected_length", t, {"overhead_bits": v})


def _percent(t, ctx):
    v = ex.percent_compressible(t["code"], t["n"], t["m"], cache=ctx.cache, budget=ctx.budget)
    return _row("percent_compressible", t, {"fraction": v})


def _icdf(t, ctx):
    return [
        ex.ExperimentResult("icdf", dict(t), {"rate": p.rate, "tail_prob": p.tail_prob})
        for p in ex.compression_rate_icdf(t["code"], t["n"])
    ]


def _bias(t, ctx):
    v = ex.bias_detection_prob(t["code"], t["theta_bias"], t["n"], t["m"], cache=ctx.cache,
                               budget=ctx.budget)
    return _row("bias_detection", t, {"prob": v})


def _thresholds(t, ctx):
    th = ex.detection_thresholds(t["code"], t["theta_bias"], t["m"], ctx.n_max, cache=ctx.cache,
                                 budget=ctx.budget)
    return _row("thresholds", t, {"lower": th.lower, "upper": th.upper,
                                  "lower_rel": None, "upper_rel": None})


def _thresholds_finish(rows):
    # normalize by the enumerative upper threshold of the same (m, theta)
    ref = {
        (r.parameters["m"], r.parameters["theta_bias"]): r.metrics["upper"]
        for r in rows if r.parameters["code"] == CodeId.ENUM.value
    }
    for r in rows:
        base = ref.get((r.parameters["m"], r.parameters["theta_bias"]))
        for key in ("lower", "upper"):
            v = r.metrics[key]
            r.metrics[key + "_rel"] = None if v is None or not base else v / base


def _classification(t, ctx):
    c = ex.coin_classification(t["code"], t["theta_bias"], t["n"])
    return _row("classification", t, {"tpr": c.tpr, "tnr": c.tnr, "acc": c.acc})


def _comp_ratio(t, ctx):
    return _row("comp_ratio", t, {"ratio": ex.comp_ratio(t["n"], t["m"], ctx.cache)})


def _compressible_ratio(t, ctx):
    v = ex.compressible_ratio(t["n"], t["m"], cache=ctx.cache, budget=ctx.budget)
    return _row("compressible_ratio", t, {"ratio": v})


def _always(task):
    return True


_CODES = ["enum", "nml"]
_COMPRESSIBLE_GRID = [
    {"m": [2], "n": _span(1, 1000)},
    {"m": [3], "n": sorted(set(_span(1, 100)) | set(log_grid(100, 5000, 20)))},
    {"m": [5], "n": sorted(set(_span(1, 100)) | set(log_grid(100, 500, 10)))},
]

EXPERIMENTS: Dict[str, Experiment] = {
    "complexity_curve": Experiment(
        ("n", "m"),
        ("comp_enum", "comp_nml_exact", "comp_rissanen", "comp_szpankowski", "bic"),
        _complexity,
        [{"m": [2, 10, 100], "n": log_grid(1, 10**5, 10)}],
    ),
    "expected_length": Experiment(
        ("n", "m", "code"), ("overhead_bits",), _expected,
        [
            {"m": [2], "n": _span(1, 1000), "code": _CODES},
            {"m": [5], "n": _span(1, 100), "code": _CODES},
            {"m": [10], "n": _span(1, 50), "code": _CODES},
        ],
        traverses=_always,
    ),
    "percent_compressible": Experiment(
        ("n", "m", "code"), ("fraction",), _percent,
        [dict(g, code=_CODES) for g in _COMPRESSIBLE_GRID],
        traverses=_always,
    ),
    "icdf": Experiment(
        ("n", "code"), ("rate", "tail_prob"), _icdf,
        [{"n": [10, 100, 1000], "code": ["enum", "nml", "random"]}],
    ),
    "bias_detection": Experiment(
        ("n", "m", "code", "theta_bias"), ("prob",), _bias,
        [{"m": [2], "n": _span(1, 1000), "code": _CODES, "theta_bias": [0.4]}],
        traverses=lambda t: t["m"] > 2,
    ),
    "thresholds": Experiment(
        ("m", "code", "theta_bias"), ("lower", "upper", "lower_rel", "upper_rel"), _thresholds,
        [
            {"m": [2], "code": _CODES, "theta_bias": [round(0.35 + 0.01 * i, 2) for i in range(15)]},
            {"m": [3], "code": _CODES, "theta_bias": [0.5, 0.6, 0.7]},
            {"m": [5], "code": _CODES, "theta_bias": [0.35, 0.4, 0.5]},
        ],
        finish=_thresholds_finish,
    ),
    "classification": Experiment(
        ("n", "code", "theta_bias"), ("tpr", "tnr", "acc"), _classification,
        [{
            "n": sorted(set(_span(1, 100)) | set(log_grid(100, 10**4, 20))),
            "code": _CODES,
            "theta_bias": [0.501, 0.51, 0.55, 0.6, 0.75, 0.9],
        }],
    ),
    "comp_ratio": Experiment(
        ("n", "m"), ("ratio",), _comp_ratio,
        [{"m": [2, 3, 5, 10, 100, 1000, 10000, 100000], "n": log_grid(1, 10**6, 5)}],
    ),
    "compressible_ratio": Experiment(
        ("n", "m"), ("ratio",), _compressible_ratio, _COMPRESSIBLE_GRID, traverses=_always,
    ),
}


def expand_grid(exp_id: str, grid: Optional[Iterable[dict]] = None) -> List[dict]:
    """Cartesian product of each sub-grid over the experiment's parameters,
    de-duplicated, in first-seen order."""
    entry = EXPERIMENTS[exp_id]
    grids = list(grid) if grid is not None else entry.default_grid
    tasks, seen = [], set()
    for g in grids:
        missing = [p for p in entry.params if p not in g]
        if missing:
            raise ValueError(f"{exp_id}: grid lacks values for {', '.join(missing)}")
        axes = []
        for p in entry.params:
            values = list(g[p])
            if not values:
                raise ValueError(f"{exp_id}: empty grid for {p}")
            if p == "code":
                values = [CodeId.parse(v).value for v in values]
            axes.append(values)
        for combo in itertools.product(*axes):
            key = tuple(combo)
            if key not in seen:
                seen.add(key)
                tasks.append(dict(zip(entry.params, combo)))
    return tasks


def _sort_key(entry: Experiment, row: ex.ExperimentResult):
    return tuple(row.parameters[p] for p in entry.params)


def run_experiment(exp_id: str, grid: Optional[Iterable[dict]] = None, *, workers: int = 1,
                   cache=None, budget: int = ex.DEFAULT_BUDGET,
                   n_max: int = 10**5) -> List[ex.ExperimentResult]:
    """Evaluate every grid point of an experiment.

    Rows are sorted by their parameter tuple (stable, so multi-row points such
    as ``icdf`` keep their internal order) and do not depend on ``workers``.
    """
    if exp_id not in EXPERIMENTS:
        raise KeyError(f"unknown experiment {exp_id!r}; choose from {', '.join(EXPERIMENTS)}")
    if budget <= 0:
        raise ValueError("budget must be positive")
    entry = EXPERIMENTS[exp_id]
    tasks = expand_grid(exp_id, grid)
    if entry.traverses is not None:
        for t in tasks:
            if entry.traverses(t):
                ex.check_budget(t["n"], t["m"], budget)
    ctx = Context(cache=cache, budget=budget, n_max=n_max)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            chunks = list(pool.map(lambda t: entry.run(t, ctx), tasks))
    else:
        chunks = [entry.run(t, ctx) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    if entry.finish is not None:
        entry.finish(rows)
    rows.sort(key=lambda r: _sort_key(entry, r))
    return rows


def format_value(v) -> str:
    if v is None:
        return MISSING
    if isinstance(v, (bool, np.bool_)):
        return str(int(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return MISSING
        return format(v, ".12g")
    return str(v)


def rows_to_csv(exp_id: str, rows: Sequence[ex.ExperimentResult]) -> str:
    entry = EXPERIMENTS[exp_id]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(entry.params) + list(entry.metrics))
    for r in rows:
        writer.writerow([format_value(r.parameters[p]) for p in entry.params]
                        + [format_value(r.metrics.get(k)) for k in entry.metrics])
    return buf.getvalue()


def write_csv(exp_id: str, rows, out_dir: "str | os.PathLike") -> Path:
    """Write ``<out_dir>/<exp_id>.csv`` via a temporary file and rename."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{exp_id}.csv"
    tmp = path.with_suffix(".csv.tmp")
    tmp.write_text(rows_to_csv(exp_id, rows))
    os.replace(tmp, path)
    return path


def read_csv(path: "str | os.PathLike") -> List[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def total_partitions(exp_id: str, grid=None) -> int:
    """Partitions traversed by an experiment's grid; a cost estimate."""
    entry = EXPERIMENTS[exp_id]
    if entry.traverses is None:
        return 0
    return sum(partition_count(t["n"], t["m"]) for t in expand_grid(exp_id, grid) if entry.traverses(t))
