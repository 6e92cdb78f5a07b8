import init, { optimize_function, k_dependence, sample_function } from "./pkg/tt_optima_web.js";

const FUNCTIONS = ["Ackley", "Alpine", "Dixon", "Exponential", "Grienwank",
  "Michalewicz", "Qing", "Rastrigin", "Schaffer", "Schwefel"];

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function call(out, f) {
  const result = JSON.parse(f());
  if (result.error) {
    $(out).textContent = "Error: " + result.error;
    return null;
  }
  return result;
}

function drawHeatmap(canvas, heatmap) {
  const ctx = canvas.getContext("2d");
  const rows = heatmap.values.length, cols = heatmap.values[0].length;
  const flat = heatmap.values.flat();
  const lo = Math.min(...flat), hi = Math.max(...flat);
  const w = canvas.width / rows, h = canvas.height / cols;
  for (let i = 0; i < rows; i++) {
    for (let j = 0; j < cols; j++) {
      const s = hi > lo ? (heatmap.values[i][j] - lo) / (hi - lo) : 0.5;
      ctx.fillStyle = `hsl(${240 - 240 * s}, 80%, 50%)`;
      ctx.fillRect(i * w, j * h, w + 1, h + 1);
    }
  }
}

// Grid nodes run from the upper bound down, so map through the node lists.
function toCanvas(canvas, heatmap, x, y) {
  const ix = heatmap.x.indexOf(x), iy = heatmap.y.indexOf(y);
  return [(ix + 0.5) * canvas.width / heatmap.x.length, (iy + 0.5) * canvas.height / heatmap.y.length];
}

function marker(canvas, heatmap, point, color) {
  const ctx = canvas.getContext("2d");
  const [px, py] = toCanvas(canvas, heatmap, point[0], point[1]);
  ctx.strokeStyle = color;
  ctx.lineWidth = 2;
  ctx.beginPath();
  ctx.arc(px, py, 6, 0, 2 * Math.PI);
  ctx.stroke();
}

function runOptimize() {
  const r = call("opt-out", () => optimize_function($("opt-name").value, num("opt-d"), num("opt-n"), num("opt-k")));
  const canvas = $("opt-canvas");
  canvas.getContext("2d").clearRect(0, 0, canvas.width, canvas.height);
  if (!r) return;
  if (r.heatmap) {
    drawHeatmap(canvas, r.heatmap);
    marker(canvas, r.heatmap, r.x_min, "white");
    marker(canvas, r.heatmap, r.x_max, "black");
  }
  const { heatmap, ...summary } = r;
  $("opt-out").textContent = JSON.stringify(summary, null, 2);
}

function runKDependence() {
  const r = call("kd-out", () => k_dependence(num("kd-d"), num("kd-n"), num("kd-r"), num("kd-t"), BigInt(0)));
  const canvas = $("kd-canvas");
  const ctx = canvas.getContext("2d");
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  if (!r) return;
  const bar = canvas.width / r.points.length;
  ctx.font = "12px sans-serif";
  r.points.forEach((p, i) => {
    const h = p.success * (canvas.height - 20);
    ctx.fillStyle = "#4a7";
    ctx.fillRect(i * bar + 5, canvas.height - 20 - h, bar - 10, h);
    ctx.fillStyle = "#000";
    ctx.fillText(`K=${p.k}: ${(100 * p.success).toFixed(0)}%`, i * bar + 5, canvas.height - 5);
  });
  $("kd-out").textContent = JSON.stringify(r, null, 2);
}

function runSample() {
  const r = call("smp-out", () => sample_function($("smp-name").value, num("smp-n"), num("smp-c"), BigInt(0)));
  const canvas = $("smp-canvas");
  canvas.getContext("2d").clearRect(0, 0, canvas.width, canvas.height);
  if (!r) return;
  drawHeatmap(canvas, r.heatmap);
  const ctx = canvas.getContext("2d");
  ctx.fillStyle = "white";
  for (const p of r.points) {
    const [px, py] = toCanvas(canvas, r.heatmap, p[0], p[1]);
    ctx.fillRect(px - 1.5, py - 1.5, 3, 3);
  }
  $("smp-out").textContent = `${r.points.length} samples of ${r.function}^2 on a ${r.n}x${r.n} grid`;
}

await init();
for (const id of ["opt-name", "smp-name"]) {
  for (const f of FUNCTIONS) $(id).add(new Option(f, f));
}
$("opt-name").value = "Rastrigin";
$("smp-name").value = "Alpine";
$("opt-run").onclick = runOptimize;
$("kd-run").onclick = runKDependence;
$("smp-run").onclick = runSample;
runOptimize();
