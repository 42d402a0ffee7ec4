// Wire types for the steering service, schema version 1.
// Unknown fields in incoming events are ignored by design.

export const SCHEMA_VERSION = 1;

export interface StartCommand {
  cmd: "start";
  id: number;
  config?: Record<string, string | number>;
}

export interface StepCommand {
  cmd: "step";
  id: number;
  n: number;
}

export interface SetParamsCommand {
  cmd: "set_params";
  id: number;
  params: Record<string, string | number>;
}

export interface AmputateCommand {
  cmd: "amputate";
  id: number;
  rows?: [number, number];
  cells?: [number, number][];
}

export interface SimpleCommand {
  cmd: "pause" | "resume" | "snapshot";
  id: number;
}

export interface SubscribeCommand {
  cmd: "subscribe";
  id: number;
  what: "metrics" | "snapshots";
  cadence?: number;
}

export type Command =
  | StartCommand
  | StepCommand
  | SetParamsCommand
  | AmputateCommand
  | SimpleCommand
  | SubscribeCommand;

export interface Metrics {
  step: number;
  area: number;
  perimeter: number;
  circularity: number | null;
  dispersion: number | null;
  p_min: number | null;
  p_max: number | null;
  p_avg: number | null;
  components: number;
}

export interface FullSnapshotEvent {
  event: "full_snapshot";
  schema: number;
  step: number;
  width: number;
  height: number;
  /** row-major run-length tokens "state:count" */
  states: string;
  /** potentials of active cells in row-major order, null = undefined */
  potentials: (number | null)[];
  hash: string;
  config: string;
}

export interface StateDeltaEvent {
  event: "state_delta";
  step: number;
  /** [row, col, state] for every cell that changed this step */
  changed: [number, number, number][];
  /** "row,col" -> potential for cells active after the step */
  potentials: Record<string, number | null>;
  metrics: Metrics;
  hash: string;
}

export interface AckEvent {
  event: "ack";
  id: number | null;
  cmd: string;
  step: number | null;
}

export interface ErrorEvent {
  event: "error";
  id: number | null;
  reason: string;
}

export type ServerEvent =
  | FullSnapshotEvent
  | StateDeltaEvent
  | AckEvent
  | ErrorEvent;
