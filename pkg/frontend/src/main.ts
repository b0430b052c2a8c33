/*
 * main.ts
 *
 * Wires the console together: picture navigation on the left, query
 * basket in the middle, ranked results with explanations on the right.
 * All state lives in the basket and the API responses; at most one
 * search is in flight and stale responses are cancelled (latest wins).
 */

import { ApiClient, ApiError } from "./api.js";
import {
  renderBasket,
  renderExplanation,
  renderNotice,
  renderPicture,
  renderResults,
} from "./dom.js";
import { Facet, QueryBasket, Mode } from "./model.js";
import {
  explanationViewModel,
  pictureViewModel,
  resultsViewModel,
} from "./viewmodel.js";

const params = new URLSearchParams(window.location.search);
const api = new ApiClient(params.get("api") ?? "");
const basket = new QueryBasket();

let currentClass = params.get("class") ?? "stent";
let lang = params.get("lang") ?? "en";
let searchAbort: AbortController | null = null;
let lastQueryJson = "";

const pictureHost = document.getElementById("picture")!;
const basketHost = document.getElementById("basket")!;
const resultsHost = document.getElementById("results")!;
const controlsHost = document.getElementById("controls")!;
const searchBox = document.getElementById("search-box") as HTMLInputElement;
const searchButton = document.getElementById("run-search") as HTMLButtonElement;
const searchHint = document.getElementById("search-hint")!;
const modeToggle = document.getElementById("mode-toggle") as HTMLSelectElement;
const hopsInput = document.getElementById("hops") as HTMLInputElement;
const thetaInput = document.getElementById("theta") as HTMLInputElement;
const facetSelect = document.getElementById("facet-select") as HTMLSelectElement;

async function navigate(classId: string): Promise<void> {
  try {
    const response = await api.neighborhood(classId, lang);
    currentClass = classId;
    const vm = pictureViewModel(response.payload);
    pictureHost.replaceChildren(
      renderPicture(vm, {
        onNavigate: (next) => void navigate(next),
        onSelect: (id, label) =>
          addSelection(facetSelect.value as Facet, id, label),
      }),
    );
  } catch (error) {
    if (error instanceof ApiError && error.code === "unknown_class") {
      // leave the current picture in place, just surface the notice
      pictureHost.prepend(renderNotice(`no such class: ${classId}`));
      return;
    }
    pictureHost.replaceChildren(renderNotice(String(error)));
  }
}

function addSelection(facet: Facet, classId: string, label: string): void {
  basket.addSelection(facet, classId, 1.0, label);
  refreshBasket();
}

function refreshBasket(): void {
  basket.mode = modeToggle.value as Mode;
  basket.hops = Number(hopsInput.value);
  basket.theta = Number(thetaInput.value);
  basketHost.replaceChildren(
    renderBasket(basket, {
      onRemove: (facet, classId) => {
        basket.removeSelection(facet, classId);
        refreshBasket();
      },
      onWeight: (facet, classId, weight) => {
        basket.addSelection(facet, classId, weight);
        refreshBasket();
      },
    }),
  );
  const ready = basket.canSearch();
  searchButton.disabled = !ready;
  searchHint.textContent = ready
    ? ""
    : "select at least one class in an active facet to search";
}

async function runSearch(): Promise<void> {
  if (!basket.canSearch()) return;
  searchAbort?.abort();
  const abort = new AbortController();
  searchAbort = abort;
  const query = basket.toQueryDocument();
  lastQueryJson = JSON.stringify(query);
  try {
    const response = await api.search(query, 20, abort.signal);
    if (abort !== searchAbort) return; // a newer search superseded this one
    const vm = resultsViewModel(response.payload);
    resultsHost.replaceChildren(renderResults(vm, (docId) => void showExplanation(docId)));
  } catch (error) {
    if (error instanceof DOMException && error.name === "AbortError") return;
    resultsHost.replaceChildren(renderNotice(String(error)));
  }
}

async function showExplanation(docId: string): Promise<void> {
  try {
    const query = JSON.parse(lastQueryJson);
    const response = await api.explain(docId, query);
    const vm = explanationViewModel(response.payload);
    const previous = resultsHost.querySelector(".explanation");
    previous?.remove();
    resultsHost.append(renderExplanation(vm));
  } catch (error) {
    resultsHost.append(renderNotice(String(error)));
  }
}

searchButton.addEventListener("click", () => void runSearch());
modeToggle.addEventListener("change", refreshBasket);
hopsInput.addEventListener("change", refreshBasket);
thetaInput.addEventListener("change", refreshBasket);
searchBox.addEventListener("keydown", (event) => {
  if (event.key === "Enter" && searchBox.value.trim()) {
    void navigate(searchBox.value.trim());
  }
});
controlsHost.classList.remove("loading");

refreshBasket();
void navigate(currentClass);
