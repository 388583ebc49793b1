/** Evidence view: pure projection of the service payload. */

import { describe, expect, it } from "vitest";

import { renderEvidence, renderFeaturePanel, renderTimeline } from "../src/evidence.js";
import { flaggedFixture } from "./helpers.js";

describe("evidence panel", () => {
  it("timeline rows appear in tick order with their band kinds", () => {
    const entry = flaggedFixture().flagged[0]!;
    const svg = renderTimeline(entry.evidence);
    const ticks = [...svg.querySelectorAll("rect")].map((r) => Number(r.getAttribute("data-tick")));
    expect(ticks).toEqual([...ticks].sort((a, b) => a - b));
    const kinds = new Set([...svg.querySelectorAll("rect")].map((r) => r.getAttribute("data-kind")));
    for (const kind of kinds) {
      expect(["engage", "fire", "guard", "kill", "prop", "vulnerable"]).toContain(kind);
    }
  });

  it("feature bars are ordered by the service's ranking", () => {
    const data = flaggedFixture();
    const entry = data.flagged[0]!;
    const panel = renderFeaturePanel(entry.evidence, data.ranking);
    const shown = [...panel.querySelectorAll(".feature-row")].map(
      (el) => (el as HTMLElement).dataset["feature"],
    );
    const expected = data.ranking.filter((name) =>
      entry.evidence.topFeatures.some((f) => f.name === name),
    );
    expect(shown.slice(0, expected.length)).toEqual(expected);
  });

  it("z values are displayed verbatim, never recomputed", () => {
    const data = flaggedFixture();
    const entry = data.flagged[0]!;
    const panel = renderFeaturePanel(entry.evidence, data.ranking);
    for (const feature of entry.evidence.topFeatures) {
      const row = panel.querySelector(`[data-feature="${feature.name}"]`);
      if (!row) continue;
      const text = row.querySelector(".feature-z")!.textContent;
      expect(text).toBe(feature.missing ? "missing" : feature.z.toFixed(2));
    }
  });

  it("every displayed decision traces to a service payload field", () => {
    const data = flaggedFixture();
    const entry = data.flagged[0]!;
    const view = renderEvidence(entry, data.ranking);
    for (const [name, verdict] of Object.entries(entry.evidence.subsystems)) {
      const badge = view.querySelector(`.badge-${name}`)! as HTMLElement;
      expect(badge.dataset["decision"]).toBe(String(verdict.decision));
      expect(badge.textContent).toContain(verdict.score.toFixed(2));
    }
    expect(view.querySelector(".fused")!.textContent).toContain(entry.w.toFixed(3));
    expect(view.querySelector(".fused")!.textContent).toContain(entry.epsilon.toFixed(3));
  });
});
