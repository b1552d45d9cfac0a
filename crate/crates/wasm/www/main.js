import init, { fieldCurve, dxGammaCurve, trapGrid } from "./pkg/qgem_wasm.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

// log-log line plot of one or more series sharing an x axis
function loglog(canvas, xs, series, xLabel) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const pad = { l: 70, r: 20, t: 20, b: 45 };
  ctx.clearRect(0, 0, w, h);
  const finite = (v) => Number.isFinite(v) && v > 0;
  const ys = series.flatMap((s) => s.values.filter(finite));
  if (!ys.length) return;
  const [x0, x1] = [Math.log10(xs[0]), Math.log10(xs[xs.length - 1])];
  const [y0, y1] = [Math.floor(Math.log10(Math.min(...ys))), Math.ceil(Math.log10(Math.max(...ys)))];
  const px = (x) => pad.l + ((Math.log10(x) - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const py = (y) => h - pad.b - ((Math.log10(y) - y0) / (y1 - y0 || 1)) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.strokeRect(pad.l, pad.t, w - pad.l - pad.r, h - pad.t - pad.b);
  for (let e = y0; e <= y1; e++) ctx.fillText(`1e${e}`, 8, py(10 ** e) + 4);
  for (let e = Math.ceil(x0); e <= Math.floor(x1); e++) ctx.fillText(`1e${e}`, px(10 ** e) - 12, h - pad.b + 16);
  ctx.fillText(xLabel, w / 2 - 20, h - 8);

  series.forEach((s, k) => {
    ctx.strokeStyle = s.color;
    ctx.beginPath();
    let pen = false;
    xs.forEach((x, i) => {
      const y = s.values[i];
      if (!finite(y)) { pen = false; return; }
      pen ? ctx.lineTo(px(x), py(y)) : ctx.moveTo(px(x), py(y));
      pen = true;
    });
    ctx.stroke();
    ctx.fillStyle = s.color;
    ctx.fillText(s.label, pad.l + 10, pad.t + 16 + 16 * k);
  });
}

function unzip(flat, stride) {
  const cols = Array.from({ length: stride }, () => []);
  flat.forEach((v, i) => cols[i % stride].push(v));
  return cols;
}

function guard(msgId, f) {
  try {
    f();
    $(msgId).textContent = "";
    $(msgId).className = "";
  } catch (e) {
    $(msgId).textContent = String(e.message ?? e);
    $(msgId).className = "err";
  }
}

function drawFields() {
  guard("f-msg", () => {
    const flat = fieldCurve(num("f-mass"), num("f-zmin"), num("f-zmax"), 200,
      $("f-cp").checked, $("f-dd").checked, $("f-vs").checked);
    const [z, b, g] = unzip(flat, 3);
    loglog($("f-plot"), z, [
      { label: "|B| min [T]", values: b, color: "#1f77b4" },
      { label: "∂z|B| min [T/m]", values: g, color: "#d62728" },
    ], "z [m]");
  });
}

function drawDx() {
  guard("g-msg", () => {
    const [gamma, dx] = unzip(dxGammaCurve(num("g-mass"), num("g-d"), num("g-min"), num("g-max"), 200), 2);
    loglog($("g-plot"), gamma, [{ label: "Δx min [m] (gaps: infeasible)", values: dx, color: "#2ca02c" }], "γ [Hz]");
  });
}

function drawTrap() {
  const y0 = $("t-y0").value.trim();
  if (!y0) return;
  guard("t-msg", () => {
    const n = 101;
    const v = trapGrid(parseFloat(y0), num("t-mass"), num("t-x"), num("t-z"), n, n);
    const canvas = $("t-plot");
    const ctx = canvas.getContext("2d");
    const lo = Math.min(...v), hi = Math.max(...v);
    const cell = canvas.width / n;
    for (let ix = 0; ix < n; ix++) {
      for (let iz = 0; iz < n; iz++) {
        const t = hi > lo ? (v[ix * n + iz] - lo) / (hi - lo) : 0;
        ctx.fillStyle = `hsl(${240 - 240 * t}, 70%, 50%)`;
        ctx.fillRect(ix * cell, (n - 1 - iz) * cell, cell + 1, cell + 1);
      }
    }
    $("t-msg").textContent = `x horizontal, z vertical; V from ${lo.toExponential(3)} J (blue) to ${hi.toExponential(3)} J (red)`;
  });
}

await init();
for (const [ids, draw] of [[["f-mass", "f-zmin", "f-zmax", "f-cp", "f-dd", "f-vs"], drawFields],
                           [["g-mass", "g-d", "g-min", "g-max"], drawDx],
                           [["t-y0", "t-mass", "t-x", "t-z"], drawTrap]]) {
  ids.forEach((id) => $(id).addEventListener("input", draw));
  draw();
}
