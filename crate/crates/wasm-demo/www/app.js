import init, { explore, pairing, rank_lemma } from "./pkg/hok_wasm.js";

const $ = (id) => document.getElementById(id);

function el(tag, attrs = {}, ...kids) {
  const e = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) e.setAttribute(k, v);
  for (const k of kids) e.append(k);
  return e;
}

function call(fn, ...args) {
  const r = JSON.parse(fn(...args));
  if (r.error !== undefined) throw new Error(r.error);
  return r.ok;
}

function show(target, build) {
  target.replaceChildren();
  try {
    target.append(...build());
  } catch (e) {
    target.append(el("p", { class: "err" }, String(e.message || e)));
  }
}

function intTable(rows) {
  const t = el("table", { class: "m" });
  for (const r of rows) t.append(el("tr", {}, ...r.map((x) => el("td", {}, String(x)))));
  return t;
}

function rootData() {
  const d = call(explore, $("rd-type").value, Number($("rd-q").value) || 0);
  const iso = el("table", { class: "m" },
    el("tr", {}, ...["isogeny", "index", "q_T", "closed form", "witness", "q−1 ≥ q_T", "q ≥ h+1"].map((h) => el("th", {}, h))));
  for (const r of d.isogenies) {
    const rr = r.regular_reduction;
    iso.append(el("tr", {},
      el("td", {}, r.isogeny), el("td", {}, String(r.index)), el("td", {}, String(r.q_T)),
      el("td", {}, String(r.closed_form)), el("td", {}, JSON.stringify(r.witness)),
      el("td", {}, rr ? String(rr.criterion_met) : ""), el("td", {}, rr ? String(rr.h_plus_one_met) : "")));
  }
  return [
    el("p", {}, `${d.type}: h = ${d.coxeter_number}, |W| = ${d.weyl_order}, ${d.positive_roots.length} positive roots, bad primes ${JSON.stringify(d.bad_primes)}, marks ${JSON.stringify(d.marks)}`),
    el("h3", {}, "Cartan matrix"), intTable(d.cartan),
    el("h3", {}, "Isogenies"), iso,
  ];
}

function colour(re, im) {
  const mag = Math.min(1, Math.hypot(re, im));
  const hue = ((Math.atan2(im, re) * 180) / Math.PI + 360) % 360;
  return `hsla(${hue}, 70%, 50%, ${0.15 + 0.6 * mag})`;
}

function pairingView() {
  const d = call(pairing, $("fp-name").value);
  const t = el("table", { class: "m" });
  if (d.labels) t.append(el("tr", {}, el("th", {}, ""), ...d.labels.map((l) => el("th", {}, l))));
  d.cells.forEach((row, i) => {
    const tr = el("tr", {});
    if (d.labels) tr.append(el("th", {}, d.labels[i]));
    for (const c of row) {
      const td = el("td", { title: `${c.re.toFixed(4)} + ${c.im.toFixed(4)}i` }, c.text);
      td.style.background = colour(c.re, c.im);
      tr.append(td);
    }
    t.append(tr);
  });
  const facts = `${d.name}: ${d.cells.length}×${d.cells[0]?.length ?? 0}, rank ${d.rank}` +
    (d.det !== null ? `, det ${d.det}` : "") + (d.holds !== undefined ? `, expectation holds: ${d.holds}` : "");
  return [el("p", {}, facts), t];
}

function signView() {
  const d = call(rank_lemma, Number($("rl-z").value), Number($("rl-zp").value), Number($("rl-d").value), Number($("rl-dp").value));
  const t = el("table", { class: "m signs" });
  for (const r of d.matrix) t.append(el("tr", {}, ...r.map((x) => el("td", { class: x > 0 ? "pos" : "neg", title: String(x) }))));
  return [el("p", {}, `${d.rows}×${d.cols}, rank ${d.rank}, full row rank: ${d.full_rank}`), t];
}

await init();
const wire = (btn, out, f) => {
  $(btn).addEventListener("click", () => show($(out), f));
  show($(out), f);
};
wire("rd-go", "rd-out", rootData);
wire("fp-go", "fp-out", pairingView);
wire("rl-go", "rl-out", signView);
