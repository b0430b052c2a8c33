/*
 * dom.ts
 *
 * Renders view models into DOM nodes. Strictly presentational: every
 * number printed here is a raw string captured from an API response.
 */

import { FACET_LABELS, Facet, QueryBasket } from "./model.js";
import {
  ExplanationVM,
  NeighborVM,
  PictureVM,
  ResultsVM,
} from "./viewmodel.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export interface PictureHandlers {
  onNavigate: (classId: string) => void;
  onSelect: (classId: string, label: string) => void;
}

function neighborNode(vm: NeighborVM, handlers: PictureHandlers): HTMLElement {
  const node = el("div", "picture-entry");
  node.style.setProperty("--offset", `${vm.offsetPct}%`);
  const name = el("button", "class-chip", vm.label);
  name.title = vm.definition; // hover pop-up definition
  name.addEventListener("click", () => handlers.onNavigate(vm.classId));
  const weight = el("span", "weight", vm.weightRaw);
  const add = el("button", "add-btn", "+");
  add.title = "add to query basket";
  add.addEventListener("click", () => handlers.onSelect(vm.classId, vm.label));
  const badge = el("span", "provenance", vm.provenance.join(", "));
  node.append(name, weight, add, badge);
  return node;
}

/** Vertical column: least similar at the top, focal class at the
 * bottom center, instances underneath. */
export function renderPicture(vm: PictureVM, handlers: PictureHandlers): HTMLElement {
  const root = el("section", "picture");
  const column = el("div", "picture-column");
  for (const neighbor of [...vm.above].sort((a, b) => b.offsetPct - a.offsetPct)) {
    column.append(neighborNode(neighbor, handlers));
  }
  const focal = el("div", "picture-focal");
  const name = el("span", "class-chip focal", vm.focal.label);
  name.title = vm.focal.definition;
  const add = el("button", "add-btn", "+");
  add.addEventListener("click", () => handlers.onSelect(vm.focal.classId, vm.focal.label));
  focal.append(name, add);
  column.append(focal);
  root.append(column);

  if (vm.instances.length) {
    const instances = el("div", "picture-instances");
    instances.append(el("h4", undefined, "instances"));
    for (const instance of vm.instances) {
      instances.append(neighborNode(instance, handlers));
    }
    root.append(instances);
  }
  return root;
}

export interface BasketHandlers {
  onRemove: (facet: Facet, classId: string) => void;
  onWeight: (facet: Facet, classId: string, weight: number) => void;
}

export function renderBasket(basket: QueryBasket, handlers: BasketHandlers): HTMLElement {
  const root = el("section", "basket");
  for (const facet of Object.keys(FACET_LABELS) as Facet[]) {
    const group = el("div", "basket-facet");
    if (basket.isFacetDisabled(facet)) group.classList.add("disabled");
    group.append(el("h4", undefined, FACET_LABELS[facet]));
    for (const selection of basket.selectionsFor(facet)) {
      const row = el("div", "basket-row");
      row.append(el("span", "class-chip", selection.label));
      const weight = el("input") as HTMLInputElement;
      weight.type = "range";
      weight.min = "0.05";
      weight.max = "1";
      weight.step = "0.05";
      weight.value = String(selection.weight);
      weight.addEventListener("change", () =>
        handlers.onWeight(facet, selection.classId, Number(weight.value)),
      );
      const value = el("span", "weight", String(selection.weight));
      const remove = el("button", "remove-btn", "x");
      remove.addEventListener("click", () => handlers.onRemove(facet, selection.classId));
      row.append(weight, value, remove);
      group.append(row);
    }
    root.append(group);
  }
  return root;
}

export function renderResults(vm: ResultsVM, onExplain: (docId: string) => void): HTMLElement {
  const root = el("section", "results");
  root.append(el("h3", undefined, `${vm.total} matching documents`));
  for (const [rank, hit] of vm.hits.entries()) {
    const row = el("div", "hit");
    const head = el("div", "hit-head");
    head.append(
      el("span", "rank", String(rank + 1)),
      el("span", "doc-id", hit.docId),
      el("span", "score", hit.scoreRaw),
    );
    head.addEventListener("click", () => onExplain(hit.docId));
    row.append(head);
    const bars = el("div", "facet-bars");
    for (const facet of hit.facetScores) {
      const bar = el("div", "facet-bar");
      const fill = el("div", "facet-bar-fill");
      fill.style.width = `${facet.barPct}%`;
      bar.title = `${facet.facet}: ${facet.valueRaw}`;
      bar.append(fill, el("span", "facet-bar-label", `${facet.facet} ${facet.valueRaw}`));
      bars.append(bar);
    }
    row.append(bars);
    root.append(row);
  }
  return root;
}

export function renderExplanation(vm: ExplanationVM): HTMLElement {
  const root = el("section", "explanation");
  root.append(el("h3", undefined, `why ${vm.docId} scores ${vm.scoreRaw}`));
  for (const match of vm.matches) {
    const row = el("div", "explanation-row");
    row.append(
      el("span", "facet-name", match.facet),
      el("span", "path", match.path.join(" → ")),
      el(
        "span",
        "calc",
        `weight ${match.weightRaw} x sim ${match.similarityRaw} x degree ` +
          `${match.matchedDegreeRaw} = ${match.contributionRaw}`,
      ),
    );
    root.append(row);
  }
  return root;
}

export function renderNotice(message: string): HTMLElement {
  return el("div", "notice", message);
}
