/**
 * Threshold-optimizer tuning panel: objective selector, current settings,
 * and the old-vs-new metric trade-off exactly as the service returned it.
 */

import type { MvinSettings, ObjectivePayload, OptimizerResponse } from "./types.js";

const OBJECTIVES: { value: ObjectivePayload["kind"]; label: string }[] = [
  { value: "f1", label: "F1-Score" },
  { value: "accuracy", label: "Accuracy" },
  { value: "auc", label: "AUC-ROC" },
  { value: "accuracy-subject-to-recall", label: "Accuracy with recall bound" },
];

export interface OptimizerHandlers {
  onPreview: (objective: ObjectivePayload) => void;
  onApply: (objective: ObjectivePayload) => void;
  onCancel: () => void;
}

function fmt(value: number | null): string {
  return value === null ? "N/A" : value.toFixed(3);
}

function settingsBlock(title: string, settings: MvinSettings): HTMLElement {
  const block = document.createElement("div");
  block.className = `settings settings-${title.toLowerCase()}`;
  const heading = document.createElement("h4");
  heading.textContent = title;
  const lam = document.createElement("p");
  lam.className = "lambda";
  lam.textContent = `lambda = [${settings.lambda.map((v) => v.toFixed(2)).join(", ")}]  epsilon = ${settings.epsilon.toFixed(3)}`;
  const metricsList = document.createElement("dl");
  metricsList.className = "metrics";
  for (const key of ["recall", "accuracy", "oei"] as const) {
    const dt = document.createElement("dt");
    dt.textContent = key;
    const dd = document.createElement("dd");
    dd.dataset["metric"] = `${title.toLowerCase()}-${key}`;
    dd.textContent = fmt(settings.validationMetrics[key]);
    metricsList.append(dt, dd);
  }
  block.append(heading, lam, metricsList);
  return block;
}

export function readObjective(root: HTMLElement): ObjectivePayload {
  const select = root.querySelector<HTMLSelectElement>(".objective-select")!;
  const kind = select.value as ObjectivePayload["kind"];
  if (kind === "accuracy-subject-to-recall") {
    const r = parseFloat(root.querySelector<HTMLInputElement>(".recall-bound")!.value);
    return { kind, r };
  }
  return { kind };
}

export function renderOptimizer(
  current: MvinSettings | null,
  handlers: OptimizerHandlers,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "optimizer";

  const select = document.createElement("select");
  select.className = "objective-select";
  for (const { value, label } of OBJECTIVES) {
    const option = document.createElement("option");
    option.value = value;
    option.textContent = label;
    select.appendChild(option);
  }

  const bound = document.createElement("input");
  bound.className = "recall-bound";
  bound.type = "number";
  bound.step = "0.05";
  bound.value = "0.75";

  const preview = document.createElement("button");
  preview.className = "preview";
  preview.textContent = "Preview";
  preview.addEventListener("click", () => handlers.onPreview(readObjective(panel)));

  const apply = document.createElement("button");
  apply.className = "apply";
  apply.textContent = "Apply";
  apply.addEventListener("click", () => handlers.onApply(readObjective(panel)));

  const cancel = document.createElement("button");
  cancel.className = "cancel";
  cancel.textContent = "Cancel";
  cancel.addEventListener("click", () => handlers.onCancel());

  const currentBlock = document.createElement("div");
  currentBlock.className = "current-settings";
  if (current) currentBlock.appendChild(settingsBlock("Current", current));

  const result = document.createElement("div");
  result.className = "optimizer-result";

  panel.append(select, bound, preview, apply, cancel, currentBlock, result);
  return panel;
}

/** Show the service's returned old/new settings verbatim. */
export function showOptimizerResult(panel: HTMLElement, response: OptimizerResponse): void {
  const result = panel.querySelector<HTMLElement>(".optimizer-result")!;
  result.replaceChildren(
    settingsBlock("Old", response.old),
    settingsBlock("New", response.new),
  );
  const status = document.createElement("p");
  status.className = "optimizer-status";
  status.textContent = response.applied ? "Applied." : "Preview only; not applied.";
  result.appendChild(status);
}

export function showOptimizerError(panel: HTMLElement, message: string): void {
  const result = panel.querySelector<HTMLElement>(".optimizer-result")!;
  const err = document.createElement("p");
  err.className = "optimizer-error";
  err.textContent = message;
  result.replaceChildren(err);
}
