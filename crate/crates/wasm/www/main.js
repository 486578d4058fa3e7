import init, { analyze, graph, family } from "./pkg/cdwg_wasm.js";

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function showError(e) {
  $("error").textContent = e ? String(e.message ?? e) : "";
}

function lengthFilter() {
  const kind = $("len-kind").value;
  const l = Math.max(2, parseInt($("len").value, 10) || 2);
  return kind === "max" ? l : kind === "min" ? -l : 0;
}

function renderSets(result) {
  const s = result.stats;
  $("stats").textContent =
    `n = ${s.n}, σ = ${s.sigma}, e_R = ${s.e_right}, e_L = ${s.e_left}, ` +
    `e_min = ${s.e_min}, |V| = ${s.nodes}` + (s.reversed ? " (reversed text indexed)" : "");
  const sets = $("sets");
  sets.replaceChildren();
  for (const [key, title] of [["maw", "Minimal absent"], ["ebf", "Extended bispecial"],
                              ["mrw", "Minimal rare (occurring)"], ["mus", "Minimal unique"]]) {
    const list = result[key];
    const div = document.createElement("div");
    const h = document.createElement("h3");
    h.textContent = `${title}: ${list.total}`;
    const ol = document.createElement("ol");
    for (const w of list.words) {
      const li = document.createElement("li");
      li.textContent = w;
      ol.append(li);
    }
    div.append(h, ol);
    sets.append(div);
  }
}

function el(name, attrs, text) {
  const e = document.createElementNS(SVG, name);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  if (text !== undefined) e.textContent = text;
  return e;
}

// Columns by longest-string length, nodes stacked within a column.
function renderGraph(g) {
  const svg = $("graph");
  svg.replaceChildren();
  const defs = el("defs", {});
  defs.append(el("marker", { id: "arrow", viewBox: "0 0 10 10", refX: 10, refY: 5,
    markerWidth: 6, markerHeight: 6, orient: "auto-start-reverse" }));
  defs.firstChild.append(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#444" }));
  svg.append(defs);

  const lens = [...new Set(g.nodes.map((n) => n.len))].sort((a, b) => a - b);
  const col = new Map(lens.map((l, i) => [l, i]));
  const perCol = new Map();
  const pos = new Map();
  const width = Math.max(400, 110 * lens.length);
  svg.setAttribute("viewBox", `0 0 ${width} 360`);
  for (const n of g.nodes) {
    const c = col.get(n.len);
    const row = perCol.get(c) ?? 0;
    perCol.set(c, row + 1);
    pos.set(n.id, { x: 50 + c * 110, y: 60 + row * 90 });
  }
  const line = (a, b, attrs) => {
    const dx = b.x - a.x, dy = b.y - a.y, d = Math.hypot(dx, dy) || 1;
    const r = 18;
    return el("line", { x1: a.x + dx / d * r, y1: a.y + dy / d * r,
      x2: b.x - dx / d * r, y2: b.y - dy / d * r, "marker-end": "url(#arrow)", ...attrs });
  };
  g.edges.forEach((e, i) => {
    const a = pos.get(e.src), b = pos.get(e.dst);
    const bend = (i % 3 - 1) * 14;
    svg.append(line(a, b, { stroke: "#444", "stroke-width": e.primary ? 2 : 1 }));
    svg.append(el("text", { x: (a.x + b.x) / 2, y: (a.y + b.y) / 2 - 4 + bend, "text-anchor": "middle" }, e.label));
  });
  for (const n of g.nodes) {
    if (n.suffix_link === null) continue;
    svg.append(line(pos.get(n.id), pos.get(n.suffix_link),
      { stroke: "#999", "stroke-dasharray": "4 3" }));
  }
  for (const n of g.nodes) {
    const p = pos.get(n.id);
    svg.append(el("circle", { cx: p.x, cy: p.y, r: 18, fill: "#fff", stroke: "#222" }));
    if (n.is_final) svg.append(el("circle", { cx: p.x, cy: p.y, r: 15, fill: "none", stroke: "#222" }));
    const title = el("title", {}, `${n.label} (occ ${n.occ})`);
    const label = el("text", { x: p.x, y: p.y + 32, "text-anchor": "middle" },
      n.label.length > 14 ? n.label.slice(0, 13) + "…" : n.label);
    label.append(title);
    svg.append(label, el("text", { x: p.x, y: p.y + 4, "text-anchor": "middle" }, n.id));
  }
}

function runAnalyze() {
  showError(null);
  const text = $("text").value;
  const mode = $("sentinels").value;
  try {
    renderSets(JSON.parse(analyze(text, mode, lengthFilter())));
  } catch (e) {
    showError(e);
    return;
  }
  try {
    renderGraph(JSON.parse(graph(text, mode)));
  } catch (e) {
    $("graph").replaceChildren();
    showError(e);
  }
}

function runFamily() {
  showError(null);
  try {
    const rows = JSON.parse(family($("family-name").value,
      parseInt($("family-from").value, 10), parseInt($("family-to").value, 10)));
    const table = $("family-table");
    table.replaceChildren();
    const head = table.insertRow();
    for (const h of ["order", "n", "e_min", "|MAW|", "|MAW| / (σ·e_min)"]) {
      const th = document.createElement("th");
      th.textContent = h;
      head.append(th);
    }
    for (const r of rows) {
      const tr = table.insertRow();
      for (const v of [r.param, r.n, r.e_min, r.maw, r.ratio.toFixed(3)]) tr.insertCell().textContent = v;
    }
  } catch (e) {
    showError(e);
  }
}

await init();
$("run").addEventListener("click", runAnalyze);
$("family-run").addEventListener("click", runFamily);
runAnalyze();
