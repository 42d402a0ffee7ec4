// Wiring: socket, controls, render loop. Everything stateful lives in the
// ViewState; this file only moves messages and repaints.

import { drawChart, metricSeries, riSeries } from "./chart.js";
import { buildAmputate, CutSelection } from "./cut.js";
import { buildSetParams, ParamValues, REFERENCE_PARAMS, validateParams } from "./params.js";
import type { Command, ServerEvent } from "./protocol.js";
import { renderFrame, ViewMode } from "./render.js";
import { applyEvent, createViewState, markCut, riRecovered } from "./store.js";

const view = createViewState(new URLSearchParams(location.search).has("debug"));
let socket: WebSocket | null = null;
let nextId = 1;
let mode: ViewMode = "potential";
let fixedScale: [number, number] | null = null;
let params: ParamValues = { ...REFERENCE_PARAMS };

const $ = (id: string) => document.getElementById(id)!;
const latticeCanvas = $("lattice") as HTMLCanvasElement;
const metricCanvas = $("metrics") as HTMLCanvasElement;
const riCanvas = $("ri") as HTMLCanvasElement;

function send(cmd: Command): void {
  if (!socket || socket.readyState !== WebSocket.OPEN) return;
  view.pending.add(cmd.id);
  socket.send(JSON.stringify(cmd));
}

function connect(): void {
  view.connection = "connecting";
  socket = new WebSocket(`ws://${location.host}/ws`);
  socket.onopen = () => {
    view.connection = "connected";
    send({ cmd: "start", id: nextId++ });
  };
  socket.onclose = () => {
    view.connection = "disconnected";
    setTimeout(connect, 1000);
  };
  socket.onmessage = (msg) => {
    const event = JSON.parse(msg.data) as ServerEvent;
    applyEvent(view, event);
  };
}

function repaint(): void {
  const ctx = latticeCanvas.getContext("2d")!;
  const scale = Math.min(
    latticeCanvas.width / Math.max(view.width + 1, 1),
    latticeCanvas.height / Math.max(view.height + 1, 1),
  );
  renderFrame(ctx, view, { mode, scale, fixedScale });
  drawChart(metricCanvas.getContext("2d")!, metricSeries(view, "area"));
  drawChart(riCanvas.getContext("2d")!, riSeries(view), {
    color: riRecovered(view) ? "#2ecc71" : "#e67e22",
    marker: 0.8,
  });
  $("status").textContent =
    `${view.connection} | step ${view.step}` +
    (view.debugHashChecks ? ` | hash mismatches ${view.hashMismatches}` : "") +
    (view.errors.length ? ` | ${view.errors[view.errors.length - 1]}` : "");
  requestAnimationFrame(repaint);
}

function wireControls(): void {
  $("run").onclick = () => send({ cmd: "resume", id: nextId++ });
  $("pause").onclick = () => send({ cmd: "pause", id: nextId++ });
  $("step").onclick = () => send({ cmd: "step", id: nextId++, n: 1 });
  $("mode").onclick = () => {
    mode = mode === "state" ? "potential" : "state";
  };
  $("scale").onclick = () => {
    fixedScale = fixedScale ? null : [0, 2.2];
  };
  $("cut").onclick = () => {
    const rows = ($("cutrows") as HTMLInputElement).value.split("..");
    const selection: CutSelection = {
      kind: "rows",
      rowStart: Number(rows[0] ?? 0),
      rowStop: Number(rows[1] ?? rows[0] ?? 0),
    };
    const cmd = buildAmputate(nextId++, selection, view.width, view.height);
    if (cmd) {
      markCut(view);
      send(cmd);
    }
  };
  $("apply").onclick = () => {
    const next = { ...params };
    for (const key of Object.keys(next) as (keyof ParamValues)[]) {
      next[key] = Number(($(`p-${key}`) as HTMLInputElement).value);
    }
    const errors = validateParams(next);
    $("paramerr").textContent = errors.join("; ");
    if (errors.length) return;
    const cmd = buildSetParams(nextId++, params, next);
    if (cmd) {
      send(cmd);
      params = next;
    }
  };
}

for (const [key, value] of Object.entries(REFERENCE_PARAMS)) {
  const input = $(`p-${key}`) as HTMLInputElement;
  if (input) input.value = String(value);
}
wireControls();
connect();
requestAnimationFrame(repaint);
