// Parameter panel validation. The same invariants the engine enforces are
// checked client-side so obvious mistakes never leave the browser; the
// server stays the authority and its errors surface inline.

import type { SetParamsCommand } from "./protocol.js";

export interface ParamValues {
  Z: number;
  X: number;
  Y: number;
  w: number;
  G: number;
  R: number;
  Ro: number;
  k: number;
}

export const REFERENCE_PARAMS: ParamValues = {
  Z: 20,
  X: 8,
  Y: 16,
  w: 0.47,
  G: 1.4,
  R: 1.27,
  Ro: 50,
  k: 0,
};

export function validateParams(values: ParamValues): string[] {
  const errors: string[] = [];
  for (const [name, v] of Object.entries(values)) {
    if (!Number.isFinite(v)) errors.push(`${name} must be a number`);
  }
  if (errors.length) return errors;
  if (!Number.isInteger(values.Z) || values.Z < 2) {
    errors.push("Z must be an integer ≥ 2");
  }
  if (
    !Number.isInteger(values.X) ||
    !Number.isInteger(values.Y) ||
    !(1 <= values.X && values.X < values.Y && values.Y <= values.Z)
  ) {
    errors.push("ranges must satisfy 1 ≤ X < Y ≤ Z");
  }
  if (values.w < 0) errors.push("w must be ≥ 0");
  if (values.k < 0 || values.k > 1) errors.push("k must be in [0, 1]");
  if (values.R >= values.Ro) errors.push("R must be below Ro");
  return errors;
}

/** Build a set_params command for only the values that changed; returns
 * null when nothing changed or when validation fails. */
export function buildSetParams(
  id: number,
  current: ParamValues,
  next: ParamValues,
): SetParamsCommand | null {
  if (validateParams(next).length) return null;
  const params: Record<string, number> = {};
  for (const key of Object.keys(next) as (keyof ParamValues)[]) {
    if (next[key] !== current[key]) params[key] = next[key];
  }
  if (!Object.keys(params).length) return null;
  return { cmd: "set_params", id, params };
}
