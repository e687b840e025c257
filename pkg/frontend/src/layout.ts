// Vertex placement: grid snap for grid-shaped boards, force-directed otherwise.

export type Point = { x: number; y: number };

type Edge = [number, number];

/** Detect a rows-by-cols grid with vertex ids laid out row-major. */
export function detectGrid(vertexCount: number, edges: Edge[]): { rows: number; cols: number } | null {
  if (vertexCount === 0) return null;
  const edgeSet = new Set(edges.map(([u, v]) => (u < v ? u * vertexCount + v : v * vertexCount + u)));
  const key = (u: number, v: number) => (u < v ? u * vertexCount + v : v * vertexCount + u);
  for (let rows = 1; rows <= vertexCount; rows++) {
    if (vertexCount % rows !== 0) continue;
    const cols = vertexCount / rows;
    if (rows === 1 && cols === 1) continue;
    let expected = 0;
    let ok = true;
    for (let r = 0; r < rows && ok; r++) {
      for (let c = 0; c < cols && ok; c++) {
        const v = r * cols + c;
        if (c + 1 < cols) {
          expected++;
          if (!edgeSet.has(key(v, v + 1))) ok = false;
        }
        if (r + 1 < rows) {
          expected++;
          if (!edgeSet.has(key(v, v + cols))) ok = false;
        }
      }
    }
    if (ok && expected === edges.length) return { rows, cols };
  }
  return null;
}

/** Deterministic PRNG so layouts are stable across reloads. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

/**
 * Position the board's vertices inside width x height.
 *
 * Grid-shaped boards snap to their grid; anything else gets a small
 * force-directed relaxation (spring edges, pairwise repulsion, centering)
 * run to a fixed iteration count for determinism.
 */
export function layoutBoard(
  vertexCount: number,
  edges: Edge[],
  width: number,
  height: number,
): Point[] {
  const pad = 40;
  const grid = detectGrid(vertexCount, edges);
  if (grid) {
    const { rows, cols } = grid;
    const points: Point[] = [];
    for (let v = 0; v < vertexCount; v++) {
      const r = Math.floor(v / cols);
      const c = v % cols;
      points.push({
        x: cols === 1 ? width / 2 : pad + (c * (width - 2 * pad)) / (cols - 1),
        y: rows === 1 ? height / 2 : pad + (r * (height - 2 * pad)) / (rows - 1),
      });
    }
    return points;
  }

  const rand = mulberry32(vertexCount * 2654435761 + edges.length);
  const cx = width / 2;
  const cy = height / 2;
  const radius = Math.min(width, height) / 2 - pad;
  const points: Point[] = [];
  for (let v = 0; v < vertexCount; v++) {
    const angle = (2 * Math.PI * v) / Math.max(1, vertexCount) + rand() * 0.3;
    points.push({
      x: cx + radius * 0.8 * Math.cos(angle),
      y: cy + radius * 0.8 * Math.sin(angle),
    });
  }
  const target = Math.min(140, (2.5 * radius) / Math.max(1, Math.sqrt(vertexCount)));
  for (let iter = 0; iter < 250; iter++) {
    const step = 0.08 * (1 - iter / 300);
    const fx = new Array<number>(vertexCount).fill(0);
    const fy = new Array<number>(vertexCount).fill(0);
    for (let u = 0; u < vertexCount; u++) {
      for (let v = u + 1; v < vertexCount; v++) {
        const pu = points[u]!;
        const pv = points[v]!;
        const dx = pu.x - pv.x;
        const dy = pu.y - pv.y;
        const d2 = Math.max(25, dx * dx + dy * dy);
        const push = (target * target) / d2;
        const d = Math.sqrt(d2);
        fx[u]! += (dx / d) * push * 12;
        fy[u]! += (dy / d) * push * 12;
        fx[v]! -= (dx / d) * push * 12;
        fy[v]! -= (dy / d) * push * 12;
      }
    }
    for (const [u, v] of edges) {
      const pu = points[u]!;
      const pv = points[v]!;
      const dx = pv.x - pu.x;
      const dy = pv.y - pu.y;
      const d = Math.max(5, Math.hypot(dx, dy));
      const pull = (d - target) * 0.9;
      fx[u]! += (dx / d) * pull;
      fy[u]! += (dy / d) * pull;
      fx[v]! -= (dx / d) * pull;
      fy[v]! -= (dy / d) * pull;
    }
    for (let v = 0; v < vertexCount; v++) {
      const p = points[v]!;
      fx[v]! += (cx - p.x) * 0.01;
      fy[v]! += (cy - p.y) * 0.01;
      p.x = Math.min(width - pad, Math.max(pad, p.x + fx[v]! * step));
      p.y = Math.min(height - pad, Math.max(pad, p.y + fy[v]! * step));
    }
  }
  return points;
}
