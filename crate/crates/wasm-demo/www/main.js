import init, { walks, motive, mirror } from "./pkg/charstack_wasm.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  out.classList.remove("err");
  try {
    out.textContent = f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e);
  }
}

function renderWalks(json) {
  const r = JSON.parse(json);
  const rows = r.walks.map((w, i) =>
    `#${i + 1}  ${w.steps.join(" ")}\n  p : ${w.p.join(" ")}\n  pi: ${w.pi.join(" ")}`);
  return `${r.count} walk(s)\n` + rows.join("\n");
}

function stackArgs() {
  return [$("m-type").value, Number($("m-g").value), Number($("m-k").value), $("m-levis").value, $("m-f").value];
}

await init();

$("w-run").onclick = () =>
  show($("w-out"), () => renderWalks(walks($("w-type").value, $("w-word").value, $("w-from").value)));

$("m-run").onclick = () =>
  show($("m-out"), () => {
    const r = JSON.parse(motive(...stackArgs()));
    return `dimension ${r.dimension}\nnaive:   ${r.naive}\nstringy: ${r.stringy}  (${r.validity})`;
  });

$("x-run").onclick = () =>
  show($("m-out"), () => {
    const r = JSON.parse(mirror(...stackArgs()));
    return `G/F:          ${r.lhs}\ndual ${r.dual_type}: ${r.rhs}\nequal: ${r.equal} (${r.validity})`;
  });
