/**
 * Flagged-player queue. Renders exactly what the service returned, in the
 * order it returned (W descending); confirm/reject clicks go through the
 * handlers, expansion shows the evidence panel.
 */

import { renderEvidence } from "./evidence.js";
import type { FlaggedEntry } from "./types.js";

export interface QueueHandlers {
  onConfirm: (entry: FlaggedEntry) => void;
  onReject: (entry: FlaggedEntry) => void;
}

export function renderQueue(
  entries: FlaggedEntry[],
  ranking: string[],
  handlers: QueueHandlers,
): HTMLElement {
  const list = document.createElement("ul");
  list.className = "queue";
  if (entries.length === 0) {
    const empty = document.createElement("li");
    empty.className = "queue-empty";
    empty.textContent = "No pending flagged players.";
    list.appendChild(empty);
    return list;
  }
  for (const entry of entries) {
    const item = document.createElement("li");
    item.className = "queue-item";
    item.dataset["reportId"] = entry.reportId;
    item.dataset["steamId"] = entry.steamId;

    const summary = document.createElement("div");
    summary.className = "queue-summary";
    summary.textContent = `${entry.steamId} (match ${entry.matchId}) W=${entry.w.toFixed(3)}`;

    const confirm = document.createElement("button");
    confirm.className = "confirm";
    confirm.textContent = "Confirm ban";
    confirm.addEventListener("click", () => handlers.onConfirm(entry));

    const reject = document.createElement("button");
    reject.className = "reject";
    reject.textContent = "Reject";
    reject.addEventListener("click", () => handlers.onReject(entry));

    const toggle = document.createElement("button");
    toggle.className = "toggle-evidence";
    toggle.textContent = "Evidence";
    let open = false;
    let evidence: HTMLElement | null = null;
    toggle.addEventListener("click", () => {
      open = !open;
      if (open) {
        evidence = renderEvidence(entry, ranking);
        item.appendChild(evidence);
      } else if (evidence) {
        evidence.remove();
        evidence = null;
      }
    });

    summary.append(toggle, confirm, reject);
    item.appendChild(summary);
    list.appendChild(item);
  }
  return list;
}
