// ViewState: the client-side mirror of the session. The lattice is never
// simulated locally -- it is always snapshot + applied deltas, and in debug
// mode every delta's hash is checked against our reconstruction.

import { latticeHash } from "./hash.js";
import type { Metrics, ServerEvent } from "./protocol.js";
import { decodeStates } from "./rle.js";

export type Connection = "disconnected" | "connecting" | "connected";

export interface RiPoint {
  /** steps after the cut */
  t: number;
  ri: number;
}

export interface ViewState {
  connection: Connection;
  width: number;
  height: number;
  step: number;
  /** row-major 0/1 cell states; empty until the first snapshot */
  states: Uint8Array | null;
  /** row-major potentials, NaN where undefined */
  potentials: Float64Array | null;
  metrics: Metrics[];
  /** command ids sent but not yet acked/errored */
  pending: Set<number>;
  errors: string[];
  /** dispersion just before the cut, set when an amputate is acked */
  cutStep: number | null;
  riPreDispersion: number | null;
  riPostDispersion: number | null;
  riSeries: RiPoint[];
  debugHashChecks: boolean;
  hashMismatches: number;
}

const METRICS_RING = 2000;

export function createViewState(debugHashChecks = false): ViewState {
  return {
    connection: "disconnected",
    width: 0,
    height: 0,
    step: 0,
    states: null,
    potentials: null,
    metrics: [],
    pending: new Set(),
    errors: [],
    cutStep: null,
    riPreDispersion: null,
    riPostDispersion: null,
    riSeries: [],
    debugHashChecks,
    hashMismatches: 0,
  };
}

/** Call when an amputate command is submitted: fixes the RI baseline from
 * the last metric seen before the cut. */
export function markCut(view: ViewState): void {
  const last = view.metrics[view.metrics.length - 1];
  view.cutStep = view.step;
  view.riPreDispersion = last?.dispersion ?? null;
  view.riPostDispersion = null;
  view.riSeries = [];
}

function updateRi(view: ViewState, metrics: Metrics): void {
  if (view.cutStep === null || view.riPreDispersion === null) return;
  if (metrics.dispersion === null) return;
  if (view.riPostDispersion === null) {
    // first metric after the cut anchors the recovery scale
    view.riPostDispersion = metrics.dispersion;
    if (view.riPostDispersion === view.riPreDispersion) {
      // degenerate cut: nothing removed, drop the readout
      view.cutStep = null;
      view.riPreDispersion = null;
      return;
    }
    view.riSeries.push({ t: metrics.step - view.cutStep, ri: 0 });
    return;
  }
  const ri =
    (metrics.dispersion - view.riPostDispersion) /
    (view.riPreDispersion - view.riPostDispersion);
  view.riSeries.push({ t: metrics.step - view.cutStep, ri });
}

function pushMetrics(view: ViewState, metrics: Metrics): void {
  view.metrics.push(metrics);
  if (view.metrics.length > METRICS_RING) {
    view.metrics.splice(0, view.metrics.length - METRICS_RING);
  }
  updateRi(view, metrics);
}

export function applyEvent(view: ViewState, event: ServerEvent): void {
  switch (event.event) {
    case "full_snapshot": {
      view.width = event.width;
      view.height = event.height;
      view.step = event.step;
      view.states = decodeStates(event.states, event.width, event.height);
      view.potentials = new Float64Array(event.width * event.height).fill(NaN);
      let k = 0;
      for (let i = 0; i < view.states.length; i++) {
        if (view.states[i]) {
          const v = event.potentials[k++];
          view.potentials[i] = v === null || v === undefined ? NaN : v;
        }
      }
      if (view.debugHashChecks && latticeHash(view.states) !== event.hash) {
        view.hashMismatches++;
      }
      break;
    }
    case "state_delta": {
      if (!view.states || !view.potentials) {
        throw new Error("state_delta before any full_snapshot");
      }
      view.step = event.step;
      for (const [row, col, state] of event.changed) {
        const i = row * view.width + col;
        view.states[i] = state;
        if (!state) view.potentials[i] = NaN;
      }
      // active cells' potentials age one step; the server sends new values
      // only for cells it changed, everything else keeps its last value
      for (const [key, value] of Object.entries(event.potentials)) {
        const comma = key.indexOf(",");
        const row = Number(key.slice(0, comma));
        const col = Number(key.slice(comma + 1));
        view.potentials[row * view.width + col] =
          value === null ? NaN : value;
      }
      if (view.debugHashChecks && latticeHash(view.states) !== event.hash) {
        view.hashMismatches++;
      }
      pushMetrics(view, event.metrics);
      break;
    }
    case "ack": {
      if (event.id !== null) view.pending.delete(event.id);
      break;
    }
    case "error": {
      if (event.id !== null) view.pending.delete(event.id);
      view.errors.push(event.reason);
      break;
    }
  }
}

/** True once the RI readout has reached the 80% recovery mark. */
export function riRecovered(view: ViewState): boolean {
  return view.riSeries.some((p) => p.ri >= 0.8);
}
