import { AllocationPanel } from "./allocation.js";
import { Api } from "./api.js";
import { el } from "./dom.js";
import { WhatIfPanel } from "./whatif.js";
import type { BallotInput, ElectionDef } from "./types.js";

function download(filename: string, text: string): void {
  const blob = new Blob([text + "\n"], { type: "application/jsonl" });
  const a = el("a", { href: URL.createObjectURL(blob), download: filename });
  a.click();
  URL.revokeObjectURL(a.href);
}

async function boot(): Promise<void> {
  const api = new Api("");
  const app = document.getElementById("app");
  if (!app) return;

  let election: ElectionDef;
  try {
    election = await api.election();
  } catch {
    app.append(
      el(
        "p",
        { class: "no-election" },
        "No election loaded. Start the server with --election, e.g. ",
        el("code", {}, "liquidvote serve --static frontend/dist --election fixtures/ctv-election.json"),
      ),
    );
    return;
  }

  const info = await api.methods();
  app.append(
    el(
      "header",
      {},
      el("h1", {}, "ballot studio"),
      el(
        "p",
        { class: "election-line" },
        `${election.id} · ${election.method} · ${election.seats ?? 1} seat(s) · ` +
          `candidates: ${election.candidates.join(", ")} · ` +
          `server methods: ${info.methods.join(", ")}`,
      ),
    ),
  );

  const exported: BallotInput[] = [];
  const whatif = new WhatIfPanel({ api, election, ballots: [] });
  const panel = new AllocationPanel({
    api,
    election,
    onExport: (line) => {
      download("ballot.jsonl", line);
      exported.push(JSON.parse(line) as BallotInput);
      const editor = whatif.root.querySelector(".ballot-editor") as HTMLTextAreaElement;
      editor.value = exported.map((b) => JSON.stringify(b)).join("\n");
    },
  });

  app.append(
    el("section", {}, el("h2", {}, "build a ballot"), panel.root),
    el("section", {}, el("h2", {}, "what if"), whatif.root),
  );
}

boot().catch((err) => {
  const app = document.getElementById("app");
  if (app) app.append(el("p", { class: "boot-error" }, String(err)));
});
