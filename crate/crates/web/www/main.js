import init, { analyze, construct, bound } from "./pkg/eml_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);
const colors = {
  maximum_induced_matching: "#d62728",
  minimum_maximal_matching: "#1f77b4",
  maximum_matching: "#2ca02c",
};
let current = null;

function draw(g) {
  const svg = $("view");
  svg.replaceChildren();
  if (!g) return;
  const ns = "http://www.w3.org/2000/svg";
  const rad = 170;
  const pos = g.labels.map((_, i) => {
    const a = (2 * Math.PI * i) / g.n - Math.PI / 2;
    return [rad * Math.cos(a), rad * Math.sin(a)];
  });
  const key = $("hl").value;
  const hl = new Set(g[key].map(([u, v]) => `${u},${v}`));
  for (const [u, v] of g.edges) {
    const l = document.createElementNS(ns, "line");
    l.setAttribute("x1", pos[u][0]);
    l.setAttribute("y1", pos[u][1]);
    l.setAttribute("x2", pos[v][0]);
    l.setAttribute("y2", pos[v][1]);
    if (hl.has(`${u},${v}`)) {
      l.classList.add("hl");
      l.style.stroke = colors[key];
    }
    svg.append(l);
  }
  g.labels.forEach((label, i) => {
    const c = document.createElementNS(ns, "circle");
    c.setAttribute("cx", pos[i][0]);
    c.setAttribute("cy", pos[i][1]);
    c.setAttribute("r", 13);
    const t = document.createElementNS(ns, "text");
    t.setAttribute("x", pos[i][0]);
    t.setAttribute("y", pos[i][1]);
    t.textContent = label;
    svg.append(c, t);
  });
}

function facts(g, extra = []) {
  const lines = [...extra];
  if (g) {
    lines.push(
      `graph6  ${g.graph6}`,
      `n, m    ${g.n}, ${g.m}`,
      `(p,q,r) (${g.p},${g.q},${g.r})`,
      `connected ${g.connected}`,
    );
  }
  $("facts").className = "";
  $("facts").textContent = lines.join("\n");
}

function run(f) {
  try {
    f();
  } catch (e) {
    current = null;
    draw(null);
    $("facts").className = "error";
    $("facts").textContent = String(e.message ?? e);
  }
}

function show(g, extra) {
  current = g;
  draw(g);
  facts(g, extra);
}

await init();

$("analyze").onclick = () => run(() => show(JSON.parse(analyze($("g6").value))));
$("build").onclick = () =>
  run(() => {
    const g = JSON.parse(construct($("family").value, num("fa"), num("fb"), num("fc")));
    show(g, [`family  ${g.family}`]);
  });
$("bound").onclick = () =>
  run(() => {
    const b = JSON.parse(bound(num("bp"), num("bq"), num("br")));
    const head = [
      `bound   m <= ${b.bound} for (${b.p},${b.q},${b.r})`,
      `exact   ${b.exact}`,
      `from    ${b.source}`,
    ];
    if (!b.witness) head.push("no explicit witness for this case");
    show(b.witness, head);
  });
$("hl").onchange = () => draw(current);
$("analyze").click();
