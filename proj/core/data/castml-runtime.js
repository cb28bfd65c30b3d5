// Minimal cell runtime: binds the run controls of every .giac-cell and
// forwards EvalRequest objects to an engine registered as window.castmlEngine
// (or window.giacEngine). The engine's evaluate() returns a Promise of an
// EvalResponse {id, status, kind, payload, diagnostics}.
(function () {
  "use strict";
  var TIMEOUT_MS = 10000;

  function engine() {
    return window.castmlEngine || window.giacEngine || null;
  }

  function show(out, response) {
    out.textContent = "";
    if (response.status !== "ok") {
      var err = document.createElement("div");
      err.className = "giac-error";
      err.textContent = response.payload || "evaluation failed";
      out.appendChild(err);
      return;
    }
    if (response.kind === "svg") {
      var doc = new DOMParser().parseFromString(response.payload, "image/svg+xml");
      out.appendChild(document.importNode(doc.documentElement, true));
    } else {
      var code = document.createElement("code");
      code.textContent = response.payload;
      out.appendChild(code);
    }
  }

  function run(cell) {
    if (cell.dataset.busy === "1") return;
    var input = cell.querySelector(".giac-in");
    var out = cell.querySelector(".giac-out");
    var command = input.value.trim();
    if (!command) {
      show(out, { status: "error", payload: "empty command" });
      return;
    }
    var eng = engine();
    if (!eng) {
      show(out, { status: "error", payload: "no evaluator engine is registered on this page" });
      return;
    }
    cell.dataset.busy = "1";
    cell.classList.add("giac-busy");
    var request = { id: cell.dataset.giacId, command: command, mode: cell.dataset.giacMode };
    var timer = new Promise(function (resolve) {
      setTimeout(function () {
        resolve({ id: request.id, status: "error", kind: "text", payload: "timeout", diagnostics: [] });
      }, TIMEOUT_MS);
    });
    Promise.race([Promise.resolve(eng.evaluate(request)), timer])
      .then(function (r) { show(out, r); }, function (e) { show(out, { status: "error", payload: String(e) }); })
      .then(function () { cell.dataset.busy = "0"; cell.classList.remove("giac-busy"); });
  }

  function boot() {
    var cells = document.querySelectorAll(".giac-cell");
    Array.prototype.forEach.call(cells, function (cell) {
      cell.querySelector(".giac-run").addEventListener("click", function () { run(cell); });
      cell.querySelector(".giac-in").addEventListener("keydown", function (ev) {
        if (ev.key === "Enter") run(cell);
      });
    });
  }

  if (document.readyState === "loading") document.addEventListener("DOMContentLoaded", boot);
  else boot();
})();
