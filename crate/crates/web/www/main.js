import init, { latticeBounds, rank2Picture, sharpCase } from "./pkg/invlat_web.js";

const $ = (id) => document.getElementById(id);

function show(el, f) {
  try {
    el.innerHTML = f();
  } catch (e) {
    el.innerHTML = `<p class="err">${String(e)}</p>`;
  }
}

const vec = (v) => `(${v.join(", ")})`;

function bounds() {
  show($("sys-out"), () => {
    const r = JSON.parse(latticeBounds($("sys").value));
    const reps = Object.entries(r.dspan.witnesses).map(([k, v]) => `  [${k}] ${vec(v)}`).join("\n");
    return `<pre>index ${r.index}, dimension ${r.dimension}
dspan   = ${r.dspan.value}
bfield  = ${r.bfield.value}   generators ${r.bfield.witnesses.map(vec).join(" ")}
bfieldr = ${r.bfieldr.value}   generators ${r.bfieldr.witnesses.map(vec).join(" ")}
minima  = ${r.minima.lambdas.join(", ")}

least nonnegative coset representatives:
${reps}</pre>`;
  });
}

function picture() {
  show($("pic-out"), () => {
    const r = JSON.parse(rank2Picture(+$("pa").value, +$("pb").value, +$("pd").value));
    draw(r);
    let s = `<p>index ${r.n}, dspan ${r.dspan.value}, n/2 = ${Math.floor(r.n / 2)}</p>`;
    if (r.excluded) {
      s += "<p>contains e1, e2 or e1 - e2, so no bound below the index applies.</p>";
    } else {
      s += `<p>H = ${vec(r.he.h)}, E = ${vec(r.he.e)}, ${r.he.forms_basis ? "a basis" : `segment of ${r.he.segment.length} points`}`;
      s += `<br>staircase bound ${r.staircase_bound}</p>`;
    }
    return s;
  });
}

function draw(r) {
  const c = $("pic");
  const g = c.getContext("2d");
  const R = r.radius;
  const cell = c.width / (2 * R + 2);
  const px = (x) => (x + R + 1) * cell;
  const py = (y) => c.height - (y + R + 1) * cell;
  g.clearRect(0, 0, c.width, c.height);
  g.strokeStyle = "#ddd";
  g.beginPath();
  g.moveTo(px(-R - 1), py(0)); g.lineTo(px(R + 1), py(0));
  g.moveTo(px(0), py(-R - 1)); g.lineTo(px(0), py(R + 1));
  g.stroke();
  // points of weight zero sit on the anti-diagonal
  g.strokeStyle = "#eee";
  g.beginPath();
  g.moveTo(px(-R - 1), py(R + 1)); g.lineTo(px(R + 1), py(-R - 1));
  g.stroke();
  const dot = (p, col, rad) => {
    g.fillStyle = col;
    g.beginPath();
    g.arc(px(p[0]), py(p[1]), rad, 0, 2 * Math.PI);
    g.fill();
  };
  const rad = Math.max(1.5, cell / 5);
  for (const p of r.points) dot(p, "#888", rad);
  for (const v of Object.values(r.dspan.witnesses)) dot(v, "#1a7f37", rad * 1.6);
  if (r.he) {
    g.strokeStyle = "#c2410c";
    g.beginPath();
    g.moveTo(px(0), py(0)); g.lineTo(px(r.he.h[0]), py(r.he.h[1]));
    g.lineTo(px(r.he.e[0]), py(r.he.e[1])); g.closePath();
    g.stroke();
    dot(r.he.h, "#c2410c", rad * 1.8);
    dot(r.he.e, "#c2410c", rad * 1.8);
  }
}

function sharp() {
  show($("sharp-out"), () => {
    const r = JSON.parse(sharpCase(+$("sp").value, +$("sm").value, +$("sx").value));
    const rep = r.report;
    return `<pre>exponents    ${r.exponents.join(", ")}
coefficients ${rep.coefficients.join(", ")} mod ${rep.spec.p}
bfield  = ${rep.bfield}
bfieldr = ${rep.bfieldr}
ceil(p / ceil(m/2)) = ${r.conjecture_bound}   ${rep.equal ? "equal" : "NOT equal"}</pre>`;
  });
}

await init();
$("sys-go").onclick = bounds;
$("pic-go").onclick = picture;
$("sharp-go").onclick = sharp;
bounds();
picture();
sharp();
