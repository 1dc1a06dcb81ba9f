"""Command-line surface.

Subcommands: validate (oracle gates), covert (design sweeps), auth
(authentication experiments), sweep (any single experiment), pattern
(beam-pattern CSV).  Exit codes: 0 success, 1 usage error, 2 infeasible
optimization, 3 validation-suite failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
import time
from pathlib import Path

from . import covert, experiments, simulate
from .config import ConfigError, parse_config
from .simulate import ScenarioConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INFEASIBLE = 2
EXIT_VALIDATION = 3

_COMMAND_EXPERIMENTS = {
    "covert": ("covert-sweep-eps", "covert-sweep-snr", "convergence", "worst-case"),
    "auth": ("validate-pdf", "validate-roc", "weight-compare", "sidelobe-roc"),
    "pattern": ("beam-pattern",),
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


@dataclasses.dataclass
class RunManifest:
    config_path: str
    experiment: str
    out_dir: str
    seed: int
    files: list[str]
    duration_s: float

    def print(self, stream=None):
        stream = stream or sys.stdout
        print(f"experiment : {self.experiment}", file=stream)
        print(f"config     : {self.config_path}", file=stream)
        print(f"output dir : {self.out_dir}", file=stream)
        print(f"seed       : {self.seed}", file=stream)
        for f in self.files:
            print(f"emitted    : {f}", file=stream)
        print(f"duration   : {self.duration_s:.2f} s", file=stream)


def _build_parser() -> _Parser:
    parser = _Parser(prog="covertauth", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (
        ("validate", "run every theory-vs-simulation gate"),
        ("covert", "emit the covert-design sweep CSVs"),
        ("auth", "emit the authentication experiment CSVs"),
        ("sweep", "run one named experiment (--experiment)"),
        ("pattern", "emit the beam-pattern CSV"),
    ):
        p = sub.add_parser(name, help=helptext)
        p.add_argument("--config", default=None, help="key=value config file")
        p.add_argument("--out", default=".", help="output directory for CSVs")
        p.add_argument("--seed", type=int, default=None, help="master seed override")
        p.add_argument("--trials", type=int, default=None, help="Monte Carlo trials override")
        if name == "sweep":
            p.add_argument("--experiment", required=True,
                           choices=sorted(experiments.EXPERIMENTS))
    return parser


def _load_config(args) -> ScenarioConfig:
    cfg = parse_config(args.config) if args.config else ScenarioConfig()
    updates = {}
    if args.seed is not None:
        updates["master_seed"] = args.seed
    if args.trials is not None:
        if args.trials < 1:
            raise ConfigError("--trials must be positive")
        updates["trials"] = args.trials
    return dataclasses.replace(cfg, **updates) if updates else cfg


def _run_experiments(names, cfg, args) -> int:
    start = time.monotonic()
    files = []
    for name in names:
        path = experiments.run_experiment(name, cfg, args.out)
        if not path.exists() or path.stat().st_size == 0:
            print(f"error: experiment {name} produced no data", file=sys.stderr)
            return EXIT_VALIDATION
        files.append(str(path))
    manifest = RunManifest(config_path=args.config or "<defaults>",
                           experiment=",".join(names), out_dir=str(Path(args.out)),
                           seed=cfg.master_seed, files=files,
                           duration_s=time.monotonic() - start)
    manifest.print()
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE

    try:
        cfg = _load_config(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if args.command == "validate":
        start = time.monotonic()
        reports = simulate.validation_suite(cfg)
        for report in reports:
            print(report.line())
        print(f"({len(reports)} gates in {time.monotonic() - start:.1f} s)")
        return EXIT_OK if all(r.passed for r in reports) else EXIT_VALIDATION

    if args.command in _COMMAND_EXPERIMENTS:
        # infeasible covert design is a distinct failure for the design commands
        if args.command == "covert":
            scen = simulate.build_scenario(cfg)
            probe = covert.optimize_covert(simulate.covert_problem(cfg, scen.gamma),
                                           simulate.solver_options(cfg))
            if not probe.feasible:
                print("error: covert design infeasible at the configured covertness level",
                      file=sys.stderr)
                return EXIT_INFEASIBLE
        return _run_experiments(_COMMAND_EXPERIMENTS[args.command], cfg, args)

    if args.command == "sweep":
        return _run_experiments((args.experiment,), cfg, args)

    raise AssertionError("unreachable")


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
