/**
 * Evidence panel: per-round behavior timeline bands plus the structured
 * feature z-score bars. Pure projection of the service payload; nothing is
 * recomputed here beyond pixel placement.
 */

import type { Evidence, FlaggedEntry } from "./types.js";

const BAND_ORDER = ["fire", "engage", "guard", "prop", "vulnerable", "kill"] as const;
const BAND_COLORS: Record<string, string> = {
  fire: "#e91e8c",
  engage: "#d32f2f",
  guard: "#1565c0",
  prop: "#ef8c00",
  vulnerable: "#f5c400",
  kill: "#6a1fb0",
};

export function renderTimeline(evidence: Evidence): SVGSVGElement {
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("class", "timeline");
  const width = 640;
  const rowHeight = 18;
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(BAND_ORDER.length * rowHeight + 20));

  const rows = evidence.timeline;
  if (rows.length === 0) return svg;
  const minTick = rows[0]!.tick;
  const maxTick = rows[rows.length - 1]!.tick;
  const span = Math.max(1, maxTick - minTick);

  BAND_ORDER.forEach((kind, i) => {
    const label = document.createElementNS("http://www.w3.org/2000/svg", "text");
    label.setAttribute("x", "0");
    label.setAttribute("y", String(i * rowHeight + 13));
    label.setAttribute("font-size", "10");
    label.textContent = kind;
    svg.appendChild(label);
  });

  for (const row of rows) {
    const lane = BAND_ORDER.indexOf(row.kind as (typeof BAND_ORDER)[number]);
    if (lane < 0) continue;
    const rect = document.createElementNS("http://www.w3.org/2000/svg", "rect");
    const x = 70 + ((row.tick - minTick) / span) * (width - 80);
    rect.setAttribute("x", String(x));
    rect.setAttribute("y", String(lane * rowHeight + 3));
    rect.setAttribute("width", "3");
    rect.setAttribute("height", "12");
    rect.setAttribute("fill", BAND_COLORS[row.kind] ?? "#666");
    rect.setAttribute("data-kind", row.kind);
    rect.setAttribute("data-tick", String(row.tick));
    const title = document.createElementNS("http://www.w3.org/2000/svg", "title");
    title.textContent = `r${row.roundNum} t${row.tick}: ${row.detail}`;
    rect.appendChild(title);
    svg.appendChild(rect);
  }
  return svg;
}

/** Z-score bars ordered by the service's Mann-Whitney ranking. */
export function renderFeaturePanel(evidence: Evidence, ranking: string[]): HTMLElement {
  const panel = document.createElement("div");
  panel.className = "feature-panel";
  const byName = new Map(evidence.topFeatures.map((f) => [f.name, f]));
  const ordered = [
    ...ranking.filter((name) => byName.has(name)),
    ...evidence.topFeatures.filter((f) => !ranking.includes(f.name)).map((f) => f.name),
  ];
  for (const name of ordered) {
    const feature = byName.get(name);
    if (!feature) continue;
    const row = document.createElement("div");
    row.className = "feature-row";
    row.dataset["feature"] = feature.name;

    const label = document.createElement("span");
    label.className = "feature-name";
    label.textContent = feature.name;

    const bar = document.createElement("span");
    bar.className = "feature-bar";
    const magnitude = Math.min(Math.abs(feature.z), 6);
    bar.style.width = `${magnitude * 30}px`;
    bar.style.background = feature.z >= 0 ? "#d32f2f" : "#1976d2";

    const value = document.createElement("span");
    value.className = "feature-z";
    value.textContent = feature.missing ? "missing" : feature.z.toFixed(2);

    row.append(label, bar, value);
    panel.appendChild(row);
  }
  return panel;
}

export function renderEvidence(entry: FlaggedEntry, ranking: string[]): HTMLElement {
  const container = document.createElement("section");
  container.className = "evidence";

  const verdicts = document.createElement("div");
  verdicts.className = "subsystems";
  for (const [name, verdict] of Object.entries(entry.evidence.subsystems)) {
    const badge = document.createElement("span");
    badge.className = `badge badge-${name}`;
    badge.dataset["decision"] = String(verdict.decision);
    badge.textContent = `${name}: ${verdict.decision ? "flag" : "clear"} (${verdict.score.toFixed(2)})`;
    verdicts.appendChild(badge);
  }

  const fused = document.createElement("p");
  fused.className = "fused";
  fused.textContent = `W = ${entry.w.toFixed(3)} vs epsilon = ${entry.epsilon.toFixed(3)}`;

  container.append(verdicts, fused, renderTimeline(entry.evidence), renderFeaturePanel(entry.evidence, ranking));
  return container;
}
