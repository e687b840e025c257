// Entry point: board picker plus the play loop.

import { GameApi } from "./api.js";
import { PlayApp } from "./app.js";
import type { VariantEnvelope } from "./types.js";

const PRESETS: Record<string, VariantEnvelope> = {
  "path of three": {
    variant: "plain",
    position: { vertices: 3, edges: [[0, 1], [1, 2]], token: 1 },
  },
  "4x4 grid, two tokens": {
    variant: "multitoken",
    graph: {
      vertices: 16,
      edges: gridEdges(4, 4),
    },
    tokens: [0, 15],
  },
  "5-cycle with one pass": {
    variant: "pass",
    position: { vertices: 5, edges: [[0, 1], [1, 2], [2, 3], [3, 4], [0, 4]], token: 0 },
    passes: 1,
  },
};

function gridEdges(rows: number, cols: number): [number, number][] {
  const edges: [number, number][] = [];
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      const v = r * cols + c;
      if (c + 1 < cols) edges.push([v, v + 1]);
      if (r + 1 < rows) edges.push([v, v + cols]);
    }
  }
  return edges;
}

function start(): void {
  const doc = document;
  const controls = doc.getElementById("controls")!;
  const boardRoot = doc.getElementById("app")!;
  const params = new URLSearchParams(window.location.search);
  const apiBase = params.get("api") ?? "";
  const api = new GameApi(apiBase);
  const app = new PlayApp(boardRoot, api);

  const select = doc.createElement("select");
  for (const name of Object.keys(PRESETS)) {
    const option = doc.createElement("option");
    option.value = name;
    option.textContent = name;
    select.appendChild(option);
  }
  const custom = doc.createElement("textarea");
  custom.placeholder = 'optional custom envelope JSON, e.g. {"variant":"plain","position":{...}}';
  custom.rows = 3;
  const side = doc.createElement("select");
  for (const [value, label] of [["1", "play first (AI second)"], ["0", "play second (AI first)"]]) {
    const option = doc.createElement("option");
    option.value = value!;
    option.textContent = label!;
    side.appendChild(option);
  }
  const button = doc.createElement("button");
  button.textContent = "new game";
  button.addEventListener("click", () => {
    let envelope: VariantEnvelope;
    try {
      envelope = custom.value.trim()
        ? (JSON.parse(custom.value) as VariantEnvelope)
        : PRESETS[select.value]!;
    } catch {
      boardRoot.textContent = "custom envelope is not valid JSON";
      return;
    }
    const ai = side.value === "0" ? 0 : 1;
    app.start(envelope, ai).catch((error) => {
      boardRoot.textContent = `could not start: ${error}`;
    });
  });
  controls.append(select, side, custom, button);
}

start();
