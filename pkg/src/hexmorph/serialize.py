"""Config parsing, metrics CSV, and snapshot text/PGM serialization.

Config files are flat ``key = value`` lines (``#`` comments allowed).
Model keys use the short names exposed in the CLI and UI: Z, X, Y, w, G,
R, Ro, k, scope; run keys are width, height, radius, steps, seed,
snapshot_every, checkpoint_step, amputate_step, amputate_rows, and
``sweep_<key> = v1,v2,...`` for sweep axes.
"""

from __future__ import annotations

import hashlib
import io
import math

import numpy as np

from .dynamics import GrowthScope, ModelParams
from .metrics import MetricsRecord
from .scenarios import ScenarioConfig


class ConfigError(ValueError):
    pass


class SnapshotError(ValueError):
    pass


# short config key -> ModelParams field
PARAM_KEYS = {
    "Z": ("token_steps", int),
    "X": ("inner_range", int),
    "Y": ("outer_range", int),
    "w": ("weight", float),
    "G": ("growth_threshold", float),
    "R": ("survival_threshold", float),
    "Ro": ("overcrowd_threshold", float),
    "k": ("carryover", float),
}

RUN_KEYS = {
    "width": int, "height": int, "radius": float, "steps": int,
    "seed": int, "snapshot_every": int, "checkpoint_step": int,
    "amputate_step": int,
}

CSV_HEADER = "step,area,perimeter,circularity,dispersion,p_min,p_max,p_avg,components"


def _parse_rows(value: str) -> tuple[int, int]:
    try:
        lo, hi = value.split("..")
        return int(lo), int(hi)
    except Exception:
        raise ConfigError(f"amputate_rows must look like '0..64', got {value!r}")


def parse_config(text: str, overrides: dict[str, str] | None = None) -> ScenarioConfig:
    """Build a ScenarioConfig from config text plus optional key overrides.

    Unspecified keys take the reference defaults.  Unknown keys and
    invariant violations raise ConfigError naming the offense.
    """
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        pairs[key] = value
    if overrides:
        pairs.update(overrides)

    param_kwargs = {}
    run_kwargs = {}
    sweep_axes: dict[str, list] = {}
    for key, value in pairs.items():
        try:
            if key in PARAM_KEYS:
                field, typ = PARAM_KEYS[key]
                param_kwargs[field] = typ(value)
            elif key == "scope":
                param_kwargs["growth_scope"] = GrowthScope(value)
            elif key in RUN_KEYS:
                run_kwargs[key] = RUN_KEYS[key](value)
            elif key == "amputate_rows":
                run_kwargs["amputation_rows"] = _parse_rows(value)
            elif key.startswith("sweep_") and key[6:] in PARAM_KEYS:
                field, typ = PARAM_KEYS[key[6:]]
                sweep_axes[field] = [typ(v) for v in value.split(",") if v.strip()]
            else:
                valid = sorted([*PARAM_KEYS, "scope", *RUN_KEYS,
                                "amputate_rows", "sweep_<Z|X|Y|w|G|R|Ro|k>"])
                raise ConfigError(f"unknown key {key!r}; valid keys: {', '.join(valid)}")
        except ConfigError:
            raise
        except ValueError as exc:
            raise ConfigError(f"key {key!r}: bad value {value!r} ({exc})")

    if "amputate_step" in run_kwargs:
        run_kwargs["amputation_step"] = run_kwargs.pop("amputate_step")
    try:
        params = ModelParams(**param_kwargs)
        return ScenarioConfig(params=params, sweep_axes=sweep_axes, **run_kwargs)
    except ValueError as exc:
        raise ConfigError(str(exc))


def config_hash(config: ScenarioConfig) -> str:
    """Short provenance hash over the run-defining fields."""
    p = config.params
    canon = (f"{config.width},{config.height},{config.radius},{config.seed},"
             f"{config.steps},{p.token_steps},{p.inner_range},{p.outer_range},"
             f"{p.weight!r},{p.growth_threshold!r},{p.survival_threshold!r},"
             f"{p.overcrowd_threshold!r},{p.carryover!r},{p.growth_scope.value},"
             f"{config.amputation_step},{config.amputation_rows}")
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_metrics_csv(series: list[MetricsRecord]) -> str:
    """Frozen-format CSV, one row per step; undefined values are empty fields."""
    if not series:
        raise ValueError("empty metrics series")
    out = [CSV_HEADER]
    for r in series:
        out.append(",".join(_fmt(v) for v in (
            r.step, r.area, r.perimeter, r.circularity, r.dispersion,
            r.p_min, r.p_max, r.p_avg, r.components)))
    return "\n".join(out) + "\n"


def states_rle(active: np.ndarray) -> str:
    """Row-major run-length encoding, tokens 'state:count'."""
    flat = active.ravel().astype(np.int8)
    changes = np.nonzero(np.diff(flat))[0] + 1
    starts = np.concatenate(([0], changes))
    ends = np.concatenate((changes, [flat.size]))
    return " ".join(f"{int(flat[s])}:{int(e - s)}" for s, e in zip(starts, ends))


def states_from_rle(text: str, height: int, width: int) -> np.ndarray:
    flat = np.empty(height * width, dtype=bool)
    pos = 0
    for token in text.split():
        try:
            state, count = token.split(":")
            state, count = int(state), int(count)
        except Exception:
            raise SnapshotError(f"bad RLE token {token!r}")
        if state not in (0, 1) or count < 1 or pos + count > flat.size:
            raise SnapshotError(f"invalid RLE token {token!r} at cell {pos}")
        flat[pos:pos + count] = bool(state)
        pos += count
    if pos != flat.size:
        raise SnapshotError(f"RLE covers {pos} cells, lattice has {flat.size}")
    return flat.reshape(height, width)


def encode_snapshot(active: np.ndarray, potentials: np.ndarray,
                    step: int, cfg_hash: str = "") -> str:
    """Lossless cell states + potentials quantized to 3 decimals (active
    cells only, row-major)."""
    height, width = active.shape
    vals = potentials[active]
    pot = ",".join("" if math.isnan(v) else f"{v:.3f}" for v in vals)
    return (f"hexmorph-snapshot 1\n"
            f"step={step}\nconfig={cfg_hash}\nwidth={width}\nheight={height}\n"
            f"states={states_rle(active)}\npotentials={pot}\n")


def decode_snapshot(text: str) -> tuple[int, np.ndarray, np.ndarray, str]:
    """Inverse of encode_snapshot: (step, active, potentials, config hash)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("hexmorph-snapshot"):
        raise SnapshotError("line 1: missing snapshot header")
    fields = {}
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        if "=" not in line:
            raise SnapshotError(f"line {lineno}: expected 'key=value'")
        key, value = line.split("=", 1)
        fields[key] = (lineno, value)
    for req in ("step", "width", "height", "states", "potentials"):
        if req not in fields:
            raise SnapshotError(f"missing field {req!r}")
    try:
        step = int(fields["step"][1])
        width = int(fields["width"][1])
        height = int(fields["height"][1])
    except ValueError as exc:
        raise SnapshotError(str(exc))
    try:
        active = states_from_rle(fields["states"][1], height, width)
    except SnapshotError as exc:
        raise SnapshotError(f"line {fields['states'][0]}: {exc}")
    potentials = np.full((height, width), np.nan)
    pot_text = fields["potentials"][1]
    if pot_text:
        vals = [float(v) if v else math.nan for v in pot_text.split(",")]
        if len(vals) != int(active.sum()):
            raise SnapshotError(
                f"line {fields['potentials'][0]}: {len(vals)} potentials "
                f"for {int(active.sum())} active cells")
        potentials[active] = vals
    return step, active, potentials, fields.get("config", (0, ""))[1]


def write_pgm(active: np.ndarray, potentials: np.ndarray) -> str:
    """P2 graymap for quick visual inspection: empty cells are 0; active
    cells ramp 64..255 with potential normalized min to max per frame."""
    height, width = active.shape
    gray = np.zeros((height, width), dtype=int)
    vals = potentials[active]
    finite = vals[~np.isnan(vals)]
    if finite.size and finite.max() > finite.min():
        lo, hi = finite.min(), finite.max()
        with np.errstate(invalid="ignore"):
            norm = np.clip((potentials - lo) / (hi - lo), 0.0, 1.0)
        gray[active] = (64 + np.nan_to_num(norm[active]) * 191).astype(int)
    else:
        gray[active] = 255
    buf = io.StringIO()
    buf.write(f"P2\n{width} {height}\n255\n")
    for row in gray:
        buf.write(" ".join(str(v) for v in row) + "\n")
    return buf.getvalue()
