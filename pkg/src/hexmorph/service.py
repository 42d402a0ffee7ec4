"""Session protocol for live steering: JSON commands in, JSON events out.

The session core is synchronous and transport-free so a command log fully
determines a trajectory; the WebSocket layer in server.py only shuttles
messages.  Commands apply at step boundaries (the update cycle is atomic),
every command is answered by an ack or error echoing its id, and state
reaches clients only as full snapshots plus per-step cell deltas.
"""

from __future__ import annotations

import numpy as np

from .dynamics import ModelParams, SimState, amputate, initial_state, step
from .metrics import compute_metrics
from .serialize import PARAM_KEYS, ConfigError, config_hash, parse_config, states_rle
from .scenarios import ScenarioConfig

SCHEMA_VERSION = 1


def lattice_hash(active: np.ndarray) -> str:
    """FNV-1a (32-bit) over row-major '0'/'1' bytes; mirrored by the UI."""
    h = 0x811C9DC5
    for byte in np.where(active.ravel(), 49, 48).astype(np.uint8).tobytes():
        h = ((h ^ byte) * 0x01000193) & 0xFFFFFFFF
    return f"{h:08x}"


def _metrics_dict(rec) -> dict:
    return {"step": rec.step, "area": rec.area, "perimeter": rec.perimeter,
            "circularity": rec.circularity, "dispersion": rec.dispersion,
            "p_min": rec.p_min, "p_max": rec.p_max, "p_avg": rec.p_avg,
            "components": rec.components}


class Session:
    """One steerable simulation; all mutation goes through handle_command."""

    def __init__(self):
        self.config: ScenarioConfig | None = None
        self.state: SimState | None = None
        self.running = False
        self.command_log: list[dict] = []
        self.snapshot_cadence = 0

    # -- events ------------------------------------------------------------

    def _snapshot_event(self) -> dict:
        height, width = self.state.shape
        vals = self.state.potentials[self.state.active]
        return {
            "event": "full_snapshot", "schema": SCHEMA_VERSION,
            "step": self.state.step_count,
            "width": width, "height": height,
            "states": states_rle(self.state.active),
            "potentials": [None if np.isnan(v) else round(float(v), 3) for v in vals],
            "hash": lattice_hash(self.state.active),
            "config": config_hash(self.config),
        }

    def _delta_event(self, before: np.ndarray) -> dict:
        changed = np.nonzero(before != self.state.active)
        rec = compute_metrics(self.state.active, self.state.potentials,
                              self.state.nbr, step=self.state.step_count)
        cells = [[int(r), int(c), int(self.state.active[r, c])]
                 for r, c in zip(*changed)]
        pot = {f"{r},{c}": (None if np.isnan(self.state.potentials[r, c])
                            else round(float(self.state.potentials[r, c]), 3))
               for r, c, s in cells if s}
        return {"event": "state_delta", "step": self.state.step_count,
                "changed": cells, "potentials": pot,
                "metrics": _metrics_dict(rec),
                "hash": lattice_hash(self.state.active)}

    # -- command handling ----------------------------------------------------

    def step_once(self) -> list[dict]:
        """Advance one step and return the delta event; used by the server
        loop while running.  Logged so replay reproduces free-running mode."""
        return self.handle_command({"cmd": "step", "n": 1, "id": None})[:-1]

    def handle_command(self, cmd: dict) -> list[dict]:
        cid = cmd.get("id")
        kind = cmd.get("cmd")
        try:
            events = self._dispatch(cmd)
        except (ConfigError, ValueError, KeyError, TypeError) as exc:
            return [{"event": "error", "id": cid, "reason": str(exc)}]
        self.command_log.append(cmd)
        return events + [{"event": "ack", "id": cid, "cmd": kind,
                          "step": self.state.step_count if self.state else None}]

    def _dispatch(self, cmd: dict) -> list[dict]:
        kind = cmd.get("cmd")
        if kind == "start":
            overrides = {k: str(v) for k, v in (cmd.get("config") or {}).items()}
            self.config = parse_config("", overrides=overrides)
            self.state = initial_state(self.config.height, self.config.width,
                                       self.config.radius, self.config.seed)
            self.running = False
            return [self._snapshot_event()]
        if self.state is None:
            raise ValueError(f"command {kind!r} before start")
        if kind == "pause":
            self.running = False
            return []
        if kind == "resume":
            self.running = True
            return []
        if kind == "step":
            n = int(cmd.get("n", 1))
            if n < 0:
                raise ValueError("step count must be >= 0")
            events = []
            for _ in range(n):
                before = self.state.active.copy()
                step(self.state, self.config.params)
                events.append(self._delta_event(before))
                if self.snapshot_cadence and \
                        self.state.step_count % self.snapshot_cadence == 0:
                    events.append(self._snapshot_event())
            return events
        if kind == "set_params":
            updates = {}
            for key, value in (cmd.get("params") or {}).items():
                if key == "scope":
                    from .dynamics import GrowthScope
                    updates["growth_scope"] = GrowthScope(value)
                elif key in PARAM_KEYS:
                    field, typ = PARAM_KEYS[key]
                    updates[field] = typ(value)
                else:
                    raise ValueError(f"unknown parameter {key!r}")
            from dataclasses import replace
            merged = replace(self.config.params, **updates)  # validates invariants
            self.config = replace(self.config, params=merged)
            return []
        if kind == "amputate":
            if "rows" in cmd:
                lo, hi = cmd["rows"]
                amputate(self.state, int(lo), int(hi))
            elif "cells" in cmd:
                height, width = self.state.shape
                for r, c in cmd["cells"]:
                    if not (0 <= r < height and 0 <= c < width):
                        raise ValueError(f"cell ({r}, {c}) out of bounds")
                for r, c in cmd["cells"]:
                    self.state.active[r, c] = False
                    self.state.potentials[r, c] = np.nan
                    if self.state.token_total is not None:
                        self.state.token_total[r, c] = 0.0
            else:
                raise ValueError("amputate needs 'rows' or 'cells'")
            return [self._snapshot_event()]
        if kind == "snapshot":
            return [self._snapshot_event()]
        if kind == "subscribe":
            what = cmd.get("what", "snapshots")
            if what not in ("metrics", "snapshots"):
                raise ValueError(f"unknown subscription {what!r}")
            if what == "snapshots":
                self.snapshot_cadence = int(cmd.get("cadence", 0))
            return [self._snapshot_event()]
        raise ValueError(f"unknown command {kind!r}")


def replay(command_log: list[dict]) -> Session:
    """Rebuild a session by replaying a command log from scratch."""
    session = Session()
    for cmd in command_log:
        session.handle_command(cmd)
    return session
