"""Command-line front end: ``enummdl {codelen,complexity,experiment}``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from . import runner
from .bernoulli import BernoulliStat, CodeId, code_length
from .cache import ComplexityCache
from .experiments import DEFAULT_BUDGET, BudgetExceeded, complexity_row
from .multinomial import MultinomialStat, code_length_m

log = logging.getLogger("enummdl")

COMPLEXITY_METHODS = ("comp_enum", "comp_nml_exact", "comp_rissanen", "comp_szpankowski", "bic")
_METHOD_ALIASES = {"enum": "comp_enum", "nml_exact": "comp_nml_exact", "nml": "comp_nml_exact",
                   "rissanen": "comp_rissanen", "nml_approx": "comp_rissanen",
                   "szpankowski": "comp_szpankowski"}


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# value parsing


def parse_int_list(text: str) -> List[int]:
    """Comma list of integers and inclusive ranges ``a:b`` or ``a:b:step``."""
    values: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if ":" in part:
                bits = [int(b) for b in part.split(":")]
                if len(bits) not in (2, 3):
                    raise ValueError
                lo, hi = bits[0], bits[1]
                step = bits[2] if len(bits) == 3 else 1
                if step <= 0:
                    raise ValueError
                values.extend(range(lo, hi + 1, step))
            else:
                values.append(int(part))
        except ValueError:
            raise UsageError(f"bad integer list element {part!r}") from None
    if not values:
        raise UsageError(f"empty integer list {text!r}")
    return values


def parse_float_list(text: str) -> List[float]:
    try:
        values = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise UsageError(f"bad number list {text!r}") from None
    if not values:
        raise UsageError(f"empty number list {text!r}")
    return values


def parse_codes(text: str) -> List[str]:
    try:
        return [CodeId.parse(p.strip()).value for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --------------------------------------------------------------------------
# run configuration


@dataclass
class RunConfig:
    experiment_id: str
    overrides: Dict[str, list] = field(default_factory=dict)
    grid: Optional[List[dict]] = None
    out: Path = Path(".")
    format: str = "csv"
    cache: Optional[Path] = None
    workers: int = 1
    budget: int = DEFAULT_BUDGET
    n_max: int = 10**5

    def __post_init__(self):
        if self.experiment_id not in runner.EXPERIMENTS:
            raise UsageError(f"unknown experiment {self.experiment_id!r}; "
                             f"choose from {', '.join(runner.EXPERIMENTS)}")
        if self.budget <= 0:
            raise UsageError("--budget must be positive")
        if self.workers < 1:
            raise UsageError("--workers must be >= 1")
        if self.format not in ("csv", "plot", "both"):
            raise UsageError(f"bad --format {self.format!r}")
        params = runner.EXPERIMENTS[self.experiment_id].params
        for name, values in self.overrides.items():
            if name not in params:
                raise UsageError(f"experiment {self.experiment_id} has no parameter {name!r}")
            if not values:
                raise UsageError(f"empty grid for {name}")

    def resolve_grid(self) -> List[dict]:
        """Default sub-grids (restricted to any requested ``m``) with the
        requested axes substituted."""
        if self.grid is not None:
            base = self.grid
        else:
            base = runner.EXPERIMENTS[self.experiment_id].default_grid
            if "m" in self.overrides:
                wanted = set(self.overrides["m"])
                picked = [g for g in base if wanted & set(g.get("m", ()))]
                base = picked or base
        return [dict(g, **self.overrides) for g in base]


def load_grid(text: str) -> List[dict]:
    """``--grid`` value: inline JSON or a path to a JSON file holding one
    sub-grid object or a list of them."""
    try:
        data = json.loads(Path(text).read_text()) if os.path.exists(text) else json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read --grid: {exc}") from None
    if isinstance(data, dict):
        data = [data]
    if not isinstance(data, list) or not all(isinstance(g, dict) for g in data):
        raise UsageError("--grid must be a JSON object or a list of objects")
    return data


# --------------------------------------------------------------------------
# commands


def cmd_codelen(args) -> int:
    code = CodeId.parse(args.code)
    try:
        if args.counts is not None:
            counts = [int(c) for c in args.counts.split(",")]
            if args.m is not None and args.m != len(counts):
                raise UsageError(f"--m {args.m} disagrees with {len(counts)} counts")
            if len(counts) == 2:
                res = code_length(code, BernoulliStat(sum(counts), counts[1]))
            else:
                res = code_length_m(code, MultinomialStat(counts))
        else:
            if args.n is None or args.k is None:
                raise UsageError("codelen needs --counts or both --n and --k")
            if args.m not in (None, 2):
                raise UsageError("--k describes a binary string; use --counts for m > 2")
            res = code_length(code, BernoulliStat(int(args.n), int(args.k)))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print("code,param,data,total")
    print(f"{code.value},{res.param:.6f},{res.data:.6f},{res.total:.6f}")
    return 0


def _methods(text: Optional[str]) -> List[str]:
    if not text:
        return list(COMPLEXITY_METHODS)
    out = []
    for name in text.split(","):
        name = _METHOD_ALIASES.get(name.strip(), name.strip())
        if name not in COMPLEXITY_METHODS:
            raise UsageError(f"unknown method {name!r}")
        out.append(name)
    return out


def cmd_complexity(args) -> int:
    ms = parse_int_list(args.m) if args.m else [2]
    ns = parse_int_list(args.n) if args.n else runner.log_grid(1, 10**4, 10)
    methods = _methods(args.methods)
    for m in ms:
        for n in ns:
            if n < 1 or m < 2:
                raise UsageError(f"need n >= 1 and m >= 2, got n={n}, m={m}")
            # the exact recurrence costs O(n m) steps
            if n * m > args.budget:
                raise BudgetExceeded(f"n={n}, m={m} needs {n * m} recurrence steps, "
                                     f"over the budget of {args.budget}")
    lines = ["n,m," + ",".join(methods)]
    for m in sorted(set(ms)):
        for n in sorted(set(ns)):
            row = complexity_row(n, m)
            lines.append(f"{n},{m}," + ",".join(runner.format_value(row[k]) for k in methods))
    text = "\n".join(lines) + "\n"
    if args.out:
        path = Path(args.out)
        if path.is_dir():
            path = path / "complexity.csv"
        _atomic_write(path, text)
    else:
        sys.stdout.write(text)
    return 0


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)


def config_from_args(args) -> RunConfig:
    overrides: Dict[str, list] = {}
    if args.n is not None:
        overrides["n"] = parse_int_list(args.n)
    if args.m is not None:
        overrides["m"] = parse_int_list(args.m)
    if args.code is not None:
        overrides["code"] = parse_codes(args.code)
    if args.theta_bias is not None:
        overrides["theta_bias"] = parse_float_list(args.theta_bias)
    return RunConfig(
        experiment_id=args.experiment_id,
        overrides=overrides,
        grid=load_grid(args.grid) if args.grid else None,
        out=Path(args.out or "."),
        format=args.format,
        cache=Path(args.cache) if args.cache else None,
        workers=args.workers if args.workers is not None else (os.cpu_count() or 1),
        budget=args.budget,
        n_max=args.n_max,
    )


def run_config(cfg: RunConfig) -> List[Path]:
    """Run an experiment and write its outputs; nothing is left behind on failure."""
    cache = ComplexityCache(cfg.cache) if cfg.cache else None
    rows = runner.run_experiment(cfg.experiment_id, cfg.resolve_grid(), workers=cfg.workers,
                                 cache=cache, budget=cfg.budget, n_max=cfg.n_max)
    written: List[Path] = []
    try:
        if cfg.format in ("csv", "both"):
            written.append(runner.write_csv(cfg.experiment_id, rows, cfg.out))
        if cfg.format in ("plot", "both"):
            from .plots import plot_experiment
            cfg.out.mkdir(parents=True, exist_ok=True)
            target = cfg.out / f"{cfg.experiment_id}.svg"
            written.append(target)
            plot_experiment(cfg.experiment_id, rows, target)
    except BaseException:
        for p in written:
            p.unlink(missing_ok=True)
        raise
    return written


def cmd_experiment(args) -> int:
    for path in run_config(config_from_args(args)):
        print(path)
    return 0


# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="enummdl", description="MDL code lengths and code comparisons.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("codelen", help="code length of one sufficient statistic")
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int, help="count of ones in a binary string")
    c.add_argument("--counts", help="comma-separated outcome counts")
    c.add_argument("--m", type=int)
    c.add_argument("--code", default="enum", choices=[x.value for x in CodeId])
    c.set_defaults(func=cmd_codelen)

    x = sub.add_parser("complexity", help="parametric complexity table")
    x.add_argument("--m", help="alphabet sizes (list/range)")
    x.add_argument("--n", help="sample sizes (list/range)")
    x.add_argument("--methods", help=f"subset of {','.join(COMPLEXITY_METHODS)}")
    x.add_argument("--out", help="output file or directory (default: stdout)")
    x.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    x.set_defaults(func=cmd_complexity)

    e = sub.add_parser("experiment", help="run a named experiment")
    e.add_argument("experiment_id", choices=list(runner.EXPERIMENTS))
    e.add_argument("--n")
    e.add_argument("--m")
    e.add_argument("--code")
    e.add_argument("--theta-bias", dest="theta_bias")
    e.add_argument("--n-max", dest="n_max", type=int, default=10**5)
    e.add_argument("--grid", help="JSON sub-grid(s), inline or a file path")
    e.add_argument("--out", help="output directory (default: .)")
    e.add_argument("--format", default="csv", choices=["csv", "plot", "both"])
    e.add_argument("--cache", help="complexity cache file")
    e.add_argument("--workers", type=int, help="worker threads (default: CPU count)")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.set_defaults(func=cmd_experiment)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, BudgetExceeded, ValueError, KeyError) as exc:
        print(f"enummdl: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
