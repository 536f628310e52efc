import init, { curve, ordinary, projective } from "./pkg/hodge_web.js";

const $ = (id) => document.getElementById(id);

// Exported functions throw a JSON string on error.
function call(f, ...args) {
  try {
    return { value: JSON.parse(f(...args)) };
  } catch (e) {
    try {
      return { error: JSON.parse(e).error.message };
    } catch {
      return { error: String(e) };
    }
  }
}

function ideal(gens) {
  return "(" + gens.join(", ") + ")";
}

function checkLines(checks) {
  return checks
    .map((c) => `${c.passed ? "ok  " : "FAIL"} ${c.name}${c.k != null ? " k=" + c.k : ""}: ${c.relation}`)
    .join("\n");
}

let current = null;

function drawStaircase(cells) {
  const canvas = $("staircase");
  const ctx = canvas.getContext("2d");
  const size = Math.max(4, ...cells.map(([a, b]) => Math.max(a, b) + 2));
  const step = canvas.width / size;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  ctx.fillStyle = "#7aa6d8";
  for (const [a, b] of cells) {
    ctx.fillRect(a * step, canvas.height - (b + 1) * step, step, step);
  }
  ctx.strokeStyle = "#ddd";
  for (let i = 0; i <= size; i++) {
    ctx.beginPath();
    ctx.moveTo(i * step, 0);
    ctx.lineTo(i * step, canvas.height);
    ctx.moveTo(0, i * step);
    ctx.lineTo(canvas.width, i * step);
    ctx.stroke();
  }
}

function showPoint() {
  const p = current.points[Number($("curve-point").value)];
  const k = Number($("curve-k").value);
  const stairs = p.staircases[k];
  $("curve-k-label").textContent = `${k} (colength ${stairs.monomials.length})`;
  drawStaircase(stairs.monomials);
  const r = p.resolution;
  const lines = [
    `multiplicity ${p.multiplicity}${p.node ? ", node" : ""}`,
    `resolution: ${r.blow_ups} blow-up(s), lct = ${r.lct}`,
    ...r.divisors.map((d) => `  E${d.id}: v = ${d.v}, k = ${d.k}, rho = ${d.rho}`),
    `adj = ${ideal(p.adjoint.generators)}`,
    ...p.hodge_ideals.map((i) => `I_${i.k} = ${ideal(i.generators)}  (colength ${i.colength})`),
    "",
    checkLines(p.checks),
  ];
  $("curve-detail").textContent = lines.join("\n");
}

function runCurve(ev) {
  ev.preventDefault();
  const out = $("curve-out");
  const r = call(curve, $("curve-eq").value, Number($("curve-kmax").value));
  $("curve-view").hidden = true;
  if (r.error) {
    out.innerHTML = "";
    out.append(Object.assign(document.createElement("p"), { className: "error", textContent: r.error }));
    return;
  }
  current = r.value;
  if (current.points.length === 0) {
    out.textContent = `${current.equation} = 0 has no singular rational points; all I_k are trivial.`;
    return;
  }
  const status = current.all_passed ? "all checks passed" : "some checks failed";
  out.innerHTML = `<p>${current.points.length} singular point(s); <span class="${current.all_passed ? "ok" : "fail"}">${status}</span></p>`;
  const select = $("curve-point");
  select.innerHTML = "";
  current.points.forEach((p, i) => select.append(new Option(`(${p.point.join(", ")})`, i)));
  $("curve-k").max = current.points[0].staircases.length - 1;
  $("curve-k").value = Math.min(1, $("curve-k").max);
  $("curve-view").hidden = false;
  showPoint();
}

function runOrdinary(ev) {
  ev.preventDefault();
  const r = call(ordinary, Number($("ord-n").value), Number($("ord-m").value), Number($("ord-k").value));
  $("ordinary-out").textContent = r.error ? "error: " + r.error : JSON.stringify(r.value, null, 2);
}

function runProjective(ev) {
  ev.preventDefault();
  const kmax = $("proj-kmax").value === "" ? undefined : Number($("proj-kmax").value);
  const r = call(projective, $("proj-input").value, kmax);
  if (r.error) {
    $("projective-out").textContent = "error: " + r.error;
    return;
  }
  const v = r.value;
  const lines = [
    `degree ${v.degree} hypersurface in P^${v.n}, ${v.singular_points.length} singular point(s)`,
    ...v.singular_points.map((p) => `  (${p.point.join(" : ")}) multiplicity ${p.multiplicity}`),
    ...v.subschemes.map((z) => `Z_${z.k}: degree ${z.degree}`),
    "",
    checkLines(v.checks),
  ];
  $("projective-out").textContent = lines.join("\n");
}

await init();
$("curve-form").addEventListener("submit", runCurve);
$("curve-point").addEventListener("change", showPoint);
$("curve-k").addEventListener("input", showPoint);
$("ordinary-form").addEventListener("submit", runOrdinary);
$("projective-form").addEventListener("submit", runProjective);
