"""Command-line interface: run, sweep, regen, replicate, serve.

Outputs under --out: metrics.csv, snapshots/step_%06d.{txt,pgm}, and
result.json with the classification and any RI / component summaries.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from pathlib import Path

from . import scenarios, serialize
from .scenarios import ScenarioConfig


def _load_config(args) -> ScenarioConfig:
    text = Path(args.config).read_text() if args.config else ""
    overrides = {}
    for item in args.set or []:
        if "=" not in item:
            raise serialize.ConfigError(f"--set expects key=value, got {item!r}")
        key, value = item.split("=", 1)
        overrides[key.strip()] = value.strip()
    if args.seed is not None:
        overrides["seed"] = str(args.seed)
    if args.steps is not None:
        overrides["steps"] = str(args.steps)
    if args.snapshot_every is not None:
        overrides["snapshot_every"] = str(args.snapshot_every)
    return serialize.parse_config(text, overrides=overrides)


def _write_outputs(result, out_dir: Path, extra: dict) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "metrics.csv").write_text(serialize.write_metrics_csv(result.series))
    if result.snapshots:
        snap_dir = out_dir / "snapshots"
        snap_dir.mkdir(exist_ok=True)
        chash = serialize.config_hash(result.config)
        for step_no, active, potentials in result.snapshots:
            text = serialize.encode_snapshot(active, potentials, step_no, chash)
            (snap_dir / f"step_{step_no:06d}.txt").write_text(text)
            (snap_dir / f"step_{step_no:06d}.pgm").write_text(
                serialize.write_pgm(active, potentials))
    payload = {"classification": result.label.value,
               "steps": len(result.series),
               "final_area": result.final_area,
               "ri": None, "components": None}
    payload.update(extra)
    (out_dir / "result.json").write_text(json.dumps(payload, indent=2) + "\n")


def cmd_run(args) -> int:
    config = _load_config(args)
    result = scenarios.run(config)
    _write_outputs(result, Path(args.out), {})
    print(f"run finished: {len(result.series)} steps, "
          f"area {result.final_area}, regime {result.label.value}")
    return 0


def cmd_sweep(args) -> int:
    config = _load_config(args)
    if not config.sweep_axes:
        print("sweep: no axes given (use sweep_<key> in the config or --set)",
              file=sys.stderr)
        return 2
    rows = scenarios.sweep(config)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    table = [{"values": row["values"], "seed": row["seed"],
              "label": row["label"].value,
              "area": row["record"].area,
              "perimeter": row["record"].perimeter,
              "circularity": row["record"].circularity,
              "dispersion": row["record"].dispersion}
             for row in rows]
    (out_dir / "result.json").write_text(json.dumps(
        {"sweep": table, "checkpoint_step": config.checkpoint_step},
        indent=2) + "\n")
    for row in table:
        print(f"{row['values']} -> area {row['area']}, {row['label']}")
    return 0


def cmd_regen(args) -> int:
    config = _load_config(args)
    if config.amputation_step is None:
        config = replace(config, amputation_step=200)
    result = scenarios.run(config)
    ri = {"series": result.ri_series, "success_step": result.ri_success_step,
          "v_pre": result.ri_v_pre, "v_post": result.ri_v_post}
    _write_outputs(result, Path(args.out), {"ri": ri})
    if result.ri_success_step is not None:
        print(f"regeneration succeeded {result.ri_success_step} steps after the cut")
    else:
        print("regeneration did not reach RI 0.8 in this run")
    return 0


def cmd_replicate(args) -> int:
    config = replace(_load_config(args), track_components=True)
    result = scenarios.run(config)
    report = scenarios.replication_monitor(result)
    _write_outputs(result, Path(args.out), {"components": {
        "max_components": report.max_components,
        "births": report.births,
        "max_persistence": report.max_persistence,
    }})
    print(f"max components {report.max_components}, "
          f"births {len(report.births)}, "
          f"max persistence {report.max_persistence}")
    return 0


def cmd_serve(args) -> int:
    from .server import serve
    serve(port=args.port, bind=args.bind, static_dir=args.static)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hexmorph")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="config file path")
        p.add_argument("--set", action="append", metavar="KEY=VALUE",
                       help="override a config key (repeatable)")
        p.add_argument("--seed", type=int)
        p.add_argument("--steps", type=int)
        p.add_argument("--out", default="out", help="output directory")
        p.add_argument("--snapshot-every", type=int, dest="snapshot_every")

    for name, fn in (("run", cmd_run), ("sweep", cmd_sweep),
                     ("regen", cmd_regen), ("replicate", cmd_replicate)):
        p = sub.add_parser(name)
        common(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("serve")
    p.add_argument("--port", type=int, default=7788)
    p.add_argument("--bind", default="127.0.0.1")
    p.add_argument("--static", help="static UI bundle directory")
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (serialize.ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
