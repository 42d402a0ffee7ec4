// Cut tool: translate a selection into an amputate command. Row bands map
// straight to the rows form; free rectangles become an explicit cell list.
// Selections are clamped to the lattice, an empty selection yields null.

import type { AmputateCommand } from "./protocol.js";

export interface RowBandSelection {
  kind: "rows";
  rowStart: number;
  rowStop: number; // inclusive
}

export interface RectSelection {
  kind: "rect";
  rowStart: number;
  rowStop: number; // inclusive
  colStart: number;
  colStop: number; // inclusive
}

export type CutSelection = RowBandSelection | RectSelection;

const clamp = (v: number, lo: number, hi: number) =>
  Math.min(Math.max(Math.round(v), lo), hi);

export function buildAmputate(
  id: number,
  selection: CutSelection,
  width: number,
  height: number,
): AmputateCommand | null {
  const r0 = clamp(Math.min(selection.rowStart, selection.rowStop), 0, height - 1);
  const r1 = clamp(Math.max(selection.rowStart, selection.rowStop), 0, height - 1);
  if (selection.kind === "rows") {
    return { cmd: "amputate", id, rows: [r0, r1] };
  }
  const c0 = clamp(Math.min(selection.colStart, selection.colStop), 0, width - 1);
  const c1 = clamp(Math.max(selection.colStart, selection.colStop), 0, width - 1);
  const cells: [number, number][] = [];
  for (let r = r0; r <= r1; r++) {
    for (let c = c0; c <= c1; c++) cells.push([r, c]);
  }
  return cells.length ? { cmd: "amputate", id, cells } : null;
}
