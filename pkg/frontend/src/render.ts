// Canvas hex renderer. Odd-r offset convention matching the engine: odd
// rows shift half a cell right, rows are sqrt(3)/2 apart, so the drawn
// layout lines up with engine coordinates cell for cell.

import type { ViewState } from "./store.js";

export const ROW_SPACING = Math.sqrt(3) / 2;

export type ViewMode = "state" | "potential";

export interface RenderOptions {
  mode: ViewMode;
  /** pixels per cell-center spacing */
  scale: number;
  /** fixed color scale [lo, hi]; null = normalize per frame */
  fixedScale: [number, number] | null;
}

export function cellCenter(
  row: number,
  col: number,
  scale: number,
): [number, number] {
  return [(col + 0.5 * (row % 2)) * scale, row * ROW_SPACING * scale];
}

/** Low values map toward blue/green, high toward red (hot tips). */
export function potentialColor(value: number, lo: number, hi: number): string {
  if (Number.isNaN(value)) return "#666666";
  const t = hi > lo ? Math.min(Math.max((value - lo) / (hi - lo), 0), 1) : 1;
  const hue = 240 - 240 * t; // 240 = blue ... 0 = red
  return `hsl(${hue.toFixed(0)},90%,50%)`;
}

export function potentialRange(view: ViewState): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  if (view.potentials) {
    for (const v of view.potentials) {
      if (!Number.isNaN(v)) {
        if (v < lo) lo = v;
        if (v > hi) hi = v;
      }
    }
  }
  return lo <= hi ? [lo, hi] : [0, 1];
}

function hexPath(
  ctx: CanvasRenderingContext2D,
  cx: number,
  cy: number,
  r: number,
): void {
  ctx.beginPath();
  for (let i = 0; i < 6; i++) {
    const a = Math.PI / 6 + (i * Math.PI) / 3; // flat-side-up hexagon
    const x = cx + r * Math.cos(a);
    const y = cy + r * Math.sin(a);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  }
  ctx.closePath();
}

export function renderFrame(
  ctx: CanvasRenderingContext2D,
  view: ViewState,
  options: RenderOptions,
): void {
  const { width, height, states, potentials } = view;
  ctx.fillStyle = "#111";
  ctx.fillRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  if (!states || !potentials) {
    ctx.fillStyle = "#999";
    ctx.font = "14px sans-serif";
    ctx.fillText(`no snapshot yet (${view.connection})`, 12, 24);
    return;
  }
  const [lo, hi] = options.fixedScale ?? potentialRange(view);
  const radius = options.scale * 0.58;
  for (let row = 0; row < height; row++) {
    for (let col = 0; col < width; col++) {
      const i = row * width + col;
      if (!states[i]) continue;
      const [cx, cy] = cellCenter(row, col, options.scale);
      hexPath(ctx, cx + options.scale, cy + options.scale, radius);
      ctx.fillStyle =
        options.mode === "state"
          ? "#e8e8e8"
          : potentialColor(potentials[i]!, lo, hi);
      ctx.fill();
    }
  }
}
