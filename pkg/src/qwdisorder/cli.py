"""Batch command line: ``qwdisorder run|pscan|export-sequence|scenarios``.

Exit codes: 0 success, 2 configuration error, 3 runtime or capacity error.
"""

from __future__ import annotations

import argparse
import datetime as _dt
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from .config import ConfigError, RunConfig, parse_pairs
from .ensemble import EnsembleResult, average_entanglement, best_p_scan, eta, replay_sequence
from .errors import CapacityError, ConsistencyError, DomainError
from .presets import ETA_DTS, resolve, scenario_names
from .schedule import ADO, SDD2, SDDInf, generate_sequence
from .seqio import export_sequence, import_sequence

log = logging.getLogger("qwdisorder")

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 2, 3


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_lines(path: Path, lines: Sequence[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(line + "\n" for line in lines)


def write_series(path: Path, result: EnsembleResult) -> None:
    if result.stderr is None:
        rows = ["t,mean_SE"] + [f"{t},{fmt(v)}" for t, v in enumerate(result.mean_entropy)]
    else:
        rows = ["t,mean_SE,stderr"] + [
            f"{t},{fmt(v)},{fmt(e)}" for t, (v, e) in enumerate(zip(result.mean_entropy, result.stderr))
        ]
    write_lines(path, rows)


def write_metadata(path: Path, config: RunConfig, extra: Optional[dict] = None) -> None:
    info = {
        "_code_version": __version__,
        "_timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        **(extra or {}),
    }
    text = config.to_text() + "".join(f"{k} = {v}\n" for k, v in info.items())
    write_lines(path, text.splitlines())


def run_series(config: RunConfig) -> EnsembleResult:
    config.validate()
    grid = config.grid()
    if config.sequence:
        seq = import_sequence(config.sequence)
        return replay_sequence(grid, config.position_init(), seq)
    return average_entanglement(
        grid,
        config.position_init(),
        config.build_schedule(),
        config.steps,
        config.seed,
        config.policy,
        realizations=config.realizations,
        workers=config.workers,
        method=config.method,
    )


def _eta_scan(config: RunConfig, label: str) -> list[Path]:
    out = Path(config.out)
    grid, init, n = config.grid(), config.position_init(), config.steps
    common = dict(realizations=config.realizations, workers=config.workers, method=config.method)
    ref = {
        "sdd2": average_entanglement(grid, init, SDD2(), n, config.seed, config.policy, **common),
        "sdd_inf": average_entanglement(grid, init, SDDInf(), n, config.seed, config.policy, **common),
    }
    rows = ["dt,eta_ado2,eta_adoinf"]
    for dt in ETA_DTS:
        if n % (2 * dt):
            continue
        etas = []
        for name, inner in (("sdd2", SDD2()), ("sdd_inf", SDDInf())):
            ado = average_entanglement(grid, init, ADO(inner, dt), n, config.seed, config.policy, **common)
            etas.append(eta(ado, ref[name], t_ref=n))
        rows.append(f"{dt},{fmt(etas[0])},{fmt(etas[1])}")
        log.info("%s dt=%d eta_ado2=%.4f%% eta_adoinf=%.4f%%", label, dt, 100 * etas[0], 100 * etas[1])
    path = out / f"{label}.csv"
    write_lines(path, rows)
    write_metadata(out / f"{label}.meta", config.replace(label=label), {"_kind": "eta"})
    return [path]


def run_pscan(config: RunConfig, p_values: Sequence[float]) -> Path:
    """Scan constant-p weak disorder at ``config.tref``; writes ``<label>_pscan.csv``."""
    config.validate()
    scan = best_p_scan(
        p_values,
        config.position_init(),
        config.tref,
        config.grid(),
        config.seed,
        realizations=config.realizations,
        policy=config.policy,
    )
    out = Path(config.out)
    path = out / f"{config.label}_pscan.csv"
    write_lines(path, ["p,mean_SE_at_tref"] + [f"{fmt(p)},{fmt(v)}" for p, v in scan.rows()])
    write_metadata(out / f"{config.label}_pscan.meta", config, {"_kind": "pscan", "_best_p": fmt(scan.best_p)})
    print(f"{config.label}: best p = {scan.best_p:.6g} (<S_E({config.tref})> = {scan.mean_at_tref.max():.6f})")
    return path


def run_scenario(config: RunConfig, p_values: Optional[Sequence[float]] = None) -> list[Path]:
    """Run a named scenario (or a single custom run) and write its files.

    Returns the paths of the data files written.
    """
    if config.scenario == "custom":
        kind, members = "series", {config.label: {}}
    else:
        kind, members = resolve(config.scenario)
    written = []
    for label, overrides in members.items():
        cfg = config.replace(**overrides, label=label)
        cfg.validate()
        if kind == "eta":
            written += _eta_scan(cfg, label)
        elif kind == "pscan":
            ps = p_values if p_values is not None else np.linspace(0.0, 1.0, 1000)
            written.append(run_pscan(cfg, ps))
        else:
            result = run_series(cfg)
            path = Path(cfg.out) / f"{label}.csv"
            write_series(path, result)
            write_metadata(
                Path(cfg.out) / f"{label}.meta",
                cfg,
                {"_kind": "series", "_qubits": len(cfg.grid()), "_method": result.config.get("method", "")},
            )
            log.info("%s: <S_E(%d)> = %.6f", label, result.steps, result.mean_entropy[-1])
            written.append(path)
    return written


FLAG_KEYS = (
    "scenario", "label", "schedule", "inner", "p", "dt", "switch", "transient", "direction",
    "horizon", "period", "steps", "position", "sigma0", "cutoff", "grid_step", "seed", "policy",
    "realizations", "tref", "workers", "method", "sequence", "out",
)


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key = value config file")
    for key in FLAG_KEYS:
        parser.add_argument("--" + key.replace("_", "-"), dest=key, default=None)


def build_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig()
    if args.config:
        config = RunConfig.from_text(Path(args.config).read_text(encoding="utf-8"))
    overrides = {k: getattr(args, k) for k in FLAG_KEYS if getattr(args, k) is not None}
    if "sigma0" in overrides and "position" not in overrides:
        overrides["position"] = "gaussian"
    text = "".join(f"{k} = {v}\n" for k, v in overrides.items())
    return config.replace(**parse_pairs(text))


def _p_values(args) -> Optional[list[float]]:
    if args.p_values:
        return [float(x) for x in args.p_values.split(",") if x.strip()]
    if args.p_count:
        return list(np.linspace(0.0, 1.0, int(args.p_count)))
    return None


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qwdisorder", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a scenario preset or a custom configuration")
    _add_config_flags(run)
    run.add_argument("--p-values", help="comma-separated p list for scan scenarios")
    run.add_argument("--p-count", help="number of evenly spaced p in [0, 1] for scan scenarios")

    pscan = sub.add_parser("pscan", help="scan constant Fourier probability p at t_ref")
    _add_config_flags(pscan)
    pscan.add_argument("--p-values", help="comma-separated p list")
    pscan.add_argument("--p-count", default="1000", help="evenly spaced p in [0, 1] (default 1000)")

    export = sub.add_parser("export-sequence", help="write one coin realization as 't q theta phi' lines")
    _add_config_flags(export)
    export.add_argument("--realization", type=int, default=0)
    export.add_argument("--qubit", type=int, default=None, help="per-qubit stream index")

    sub.add_parser("scenarios", help="list scenario presets")
    return parser


def _dispatch(args) -> int:
    if args.command == "scenarios":
        print("\n".join(scenario_names()))
        return EXIT_OK
    config = build_config(args)
    config.validate()
    if args.command == "run":
        for path in run_scenario(config, _p_values(args)):
            print(path)
    elif args.command == "pscan":
        print(run_pscan(config, _p_values(args)))
    elif args.command == "export-sequence":
        key = (args.realization,) if args.qubit is None else (args.realization, args.qubit)
        seq = generate_sequence(config.build_schedule(), config.steps, config.seed, key)
        export_sequence(seq, config.out)
        print(config.out)
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return _dispatch(args)
    except (ConfigError, DomainError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CapacityError, ConsistencyError, OSError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
