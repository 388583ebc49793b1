/**
 * Dashboard wiring: the review flow (list -> evidence -> verdict -> refresh)
 * and the tuning flow (objective -> preview -> apply). Verdict conflicts
 * (409) and races (404) roll the optimistic update back silently; network
 * failures surface as a toast and keep the queue.
 */

import { ApiClient, ApiError, configFromEnvironment } from "./api.js";
import { renderOptimizer, showOptimizerError, showOptimizerResult } from "./optimizer.js";
import { renderQueue } from "./queue.js";
import type { FlaggedEntry, ObjectivePayload } from "./types.js";

export class Dashboard {
  private queueRoot: HTMLElement;
  private optimizerRoot: HTMLElement;
  private toastRoot: HTMLElement;
  private entries: FlaggedEntry[] = [];
  private ranking: string[] = [];

  constructor(
    private api: ApiClient,
    private root: HTMLElement,
    private gmId: string = "gm-dashboard",
  ) {
    this.queueRoot = document.createElement("div");
    this.queueRoot.className = "queue-root";
    this.optimizerRoot = document.createElement("div");
    this.optimizerRoot.className = "optimizer-root";
    this.toastRoot = document.createElement("div");
    this.toastRoot.className = "toast-root";
    root.append(this.toastRoot, this.queueRoot, this.optimizerRoot);
  }

  toast(message: string): void {
    const note = document.createElement("p");
    note.className = "toast";
    note.textContent = message;
    this.toastRoot.appendChild(note);
    setTimeout(() => note.remove(), 4000);
  }

  async refreshQueue(): Promise<void> {
    try {
      const response = await this.api.getFlagged();
      this.entries = response.flagged;
      this.ranking = response.ranking;
      this.renderQueue();
    } catch (err) {
      this.toast(`queue refresh failed: ${String(err)} (retry)`);
      this.renderQueue(); // previous entries stay visible
    }
  }

  private renderQueue(): void {
    this.queueRoot.replaceChildren(
      renderQueue(this.entries, this.ranking, {
        onConfirm: (entry) => void this.verdict(entry, "confirmed"),
        onReject: (entry) => void this.verdict(entry, "rejected"),
      }),
    );
  }

  private async verdict(entry: FlaggedEntry, verdict: "confirmed" | "rejected"): Promise<void> {
    const before = this.entries;
    // optimistic removal; rolled back if the service rejects the verdict
    this.entries = this.entries.filter(
      (e) => !(e.reportId === entry.reportId && e.steamId === entry.steamId),
    );
    this.renderQueue();
    try {
      await this.api.postVerdict(entry.reportId, entry.steamId, verdict, this.gmId);
      await this.refreshQueue();
    } catch (err) {
      if (err instanceof ApiError && (err.status === 409 || err.status === 404)) {
        await this.refreshQueue(); // already decided elsewhere: silent resync
        return;
      }
      this.entries = before;
      this.renderQueue();
      this.toast(`verdict failed: ${String(err)} (retry)`);
    }
  }

  async mountOptimizer(): Promise<void> {
    let current = null;
    try {
      current = await this.api.getOptimizer();
    } catch {
      // current settings are cosmetic; tuning still works without them
    }
    const panel = renderOptimizer(current, {
      onPreview: (objective) => void this.tune(objective, true),
      onApply: (objective) => void this.tune(objective, false),
      onCancel: () => {
        const result = this.optimizerRoot.querySelector<HTMLElement>(".optimizer-result");
        result?.replaceChildren();
      },
    });
    this.optimizerRoot.replaceChildren(panel);
  }

  private async tune(objective: ObjectivePayload, dryRun: boolean): Promise<void> {
    const panel = this.optimizerRoot.querySelector<HTMLElement>(".optimizer")!;
    try {
      const response = await this.api.postOptimizer(objective, dryRun);
      showOptimizerResult(panel, response);
      if (!dryRun) await this.refreshQueue(); // pending queue follows the new epsilon
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        showOptimizerError(panel, "infeasible recall bound");
        return;
      }
      showOptimizerError(panel, String(err));
    }
  }
}

export function boot(root: HTMLElement): Dashboard {
  const dashboard = new Dashboard(new ApiClient(configFromEnvironment()), root);
  void dashboard.mountOptimizer();
  void dashboard.refreshQueue();
  return dashboard;
}
