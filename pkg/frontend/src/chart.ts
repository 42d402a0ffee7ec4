// Minimal polyline charts for the metric history and the RI readout.

import type { ViewState } from "./store.js";

export interface Series {
  label: string;
  points: [number, number][]; // (x, y)
}

export function metricSeries(
  view: ViewState,
  key: "area" | "perimeter" | "dispersion" | "components",
): Series {
  const points: [number, number][] = [];
  for (const m of view.metrics) {
    const v = m[key];
    if (v !== null) points.push([m.step, v]);
  }
  return { label: key, points };
}

export function riSeries(view: ViewState): Series {
  return {
    label: "recovery index",
    points: view.riSeries.map((p) => [p.t, p.ri]),
  };
}

function drawPolyline(
  ctx: CanvasRenderingContext2D,
  series: Series,
  color: string,
  xTo: (x: number) => number,
  yTo: (y: number) => number,
): void {
  if (!series.points.length) return;
  ctx.strokeStyle = color;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  series.points.forEach(([x, y], i) => {
    if (i === 0) ctx.moveTo(xTo(x), yTo(y));
    else ctx.lineTo(xTo(x), yTo(y));
  });
  ctx.stroke();
}

export function drawChart(
  ctx: CanvasRenderingContext2D,
  series: Series,
  options: { color?: string; marker?: number } = {},
): void {
  const { width, height } = ctx.canvas;
  ctx.fillStyle = "#181818";
  ctx.fillRect(0, 0, width, height);
  if (!series.points.length) return;
  const xs = series.points.map((p) => p[0]);
  const ys = series.points.map((p) => p[1]);
  const marker = options.marker;
  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs, xMin + 1);
  const yMin = Math.min(...ys, marker ?? Infinity, 0);
  const yMax = Math.max(...ys, marker ?? -Infinity);
  const pad = 8;
  const xTo = (x: number) =>
    pad + ((x - xMin) / (xMax - xMin)) * (width - 2 * pad);
  const yTo = (y: number) =>
    height - pad - ((y - yMin) / (yMax - yMin || 1)) * (height - 2 * pad);

  if (marker !== undefined) {
    ctx.strokeStyle = "#c0392b";
    ctx.setLineDash([4, 4]);
    ctx.beginPath();
    ctx.moveTo(pad, yTo(marker));
    ctx.lineTo(width - pad, yTo(marker));
    ctx.stroke();
    ctx.setLineDash([]);
  }
  drawPolyline(ctx, series, options.color ?? "#2ecc71", xTo, yTo);
  ctx.fillStyle = "#aaa";
  ctx.font = "11px sans-serif";
  ctx.fillText(series.label, pad + 2, 14);
}
