/*
 * End-to-end: a real engine server over the demo workspace, driven the
 * same way the console drives it (ApiClient + view models + basket).
 * Asserts the scenario rankings and that every number a view would
 * display occurs byte-for-byte in the captured API traffic.
 */

import { afterAll, beforeAll, describe, expect, it } from "vitest";
import { spawn, spawnSync, ChildProcess } from "node:child_process";
import { mkdtempSync, rmSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { ApiClient, ApiError } from "../src/api.js";
import { QueryBasket } from "../src/model.js";
import {
  displayedNumbers,
  explanationViewModel,
  pictureViewModel,
  resultsViewModel,
} from "../src/viewmodel.js";

const PORT = 8791;
const BASE = `http://127.0.0.1:${PORT}`;

let serverProc: ChildProcess | null = null;
let workspace: string;

/** Records every response body so tests can prove displayed numbers
 * are server-produced. */
const traffic: string[] = [];
const recordingFetch = async (input: string, init?: RequestInit) => {
  const response = await fetch(input, init);
  const text = await response.text();
  traffic.push(text);
  return new Response(text, { status: response.status });
};

const api = new ApiClient(BASE, recordingFetch);

function waitForHealth(deadlineMs: number): Promise<void> {
  const started = Date.now();
  return new Promise((resolve, reject) => {
    const poll = async () => {
      try {
        await api.health();
        resolve();
      } catch {
        if (Date.now() - started > deadlineMs) {
          reject(new Error("server did not come up in time"));
        } else {
          setTimeout(poll, 250);
        }
      }
    };
    void poll();
  });
}

beforeAll(async () => {
  workspace = mkdtempSync(join(tmpdir(), "facetforge-e2e-"));
  rmSync(workspace, { recursive: true });
  const seeded = spawnSync("facetforge", ["demo", workspace], { encoding: "utf-8" });
  if (seeded.status !== 0) {
    throw new Error(`demo seeding failed: ${seeded.stderr}`);
  }
  serverProc = spawn(
    "facetforge",
    ["-w", workspace, "serve", "--addr", `127.0.0.1:${PORT}`],
    { stdio: "ignore" },
  );
  await waitForHealth(20_000);
}, 30_000);

afterAll(() => {
  serverProc?.kill();
  rmSync(workspace, { recursive: true, force: true });
});

function demoBasket(): QueryBasket {
  const basket = new QueryBasket();
  basket.addSelection("application", "stent", 1.0);
  basket.addSelection("technology_science", "surface-materials", 1.0);
  basket.addSelection("operating_mode", "in-situ", 1.0);
  basket.addSelection("problem", "occlusion", 1.0);
  basket.addSelection("solution", "sharkskin-lining", 1.0);
  return basket;
}

describe("console against the demo workspace", () => {
  it("renders stent's picture with catheter nearer than conduit", async () => {
    const response = await api.neighborhood("stent");
    const vm = pictureViewModel(response.payload);
    const order = vm.above.map((n) => n.classId);
    expect(order.indexOf("catheter")).toBeLessThan(order.indexOf("conduit"));
    const catheter = vm.above.find((n) => n.classId === "catheter")!;
    const conduit = vm.above.find((n) => n.classId === "conduit")!;
    expect(catheter.offsetPct).toBeLessThan(conduit.offsetPct);
    expect(catheter.weightRaw).toBe("0.9");
    expect(conduit.weightRaw).toBe("0.5");
    expect(vm.instances.map((n) => n.classId)).toContain("biliary-stent");
    // hover definition comes localized from the registry
    expect(catheter.definition.length).toBeGreaterThan(0);
  });

  it("reports unknown classes as a notice-level error", async () => {
    await expect(api.neighborhood("no-such-class")).rejects.toMatchObject({
      code: "unknown_class",
      status: 404,
    });
    expect(new ApiError(404, "unknown_class", "x")).toBeInstanceOf(Error);
  });

  it("prior-art search ranks the disguised conduit document in the top 3", async () => {
    const basket = demoBasket();
    expect(basket.canSearch()).toBe(true);
    const response = await api.search(basket.toQueryDocument());
    const vm = resultsViewModel(response.payload);
    const top3 = vm.hits.slice(0, 3).map((h) => h.docId);
    expect(top3).toContain("pat-rough-conduit");
    // the oracle-verified scenario ranking, end to end
    expect(vm.hits.map((h) => h.docId)).toEqual([
      "pat-litho-catheter",
      "pat-rough-conduit",
      "pat-polished-stent",
      "pat-sharkskin-hull",
      "pat-drug-stent",
      "pat-pipeline-liner",
      "npl-golf-dimples",
      "npl-whale-tubercles",
      "pat-balloon-catheter",
      "pat-stent-graft",
    ]);
  });

  it("toggling solution mode reranks with the catheter document first", async () => {
    const basket = demoBasket();
    basket.mode = "solution";
    expect(basket.isFacetDisabled("solution")).toBe(true);
    const response = await api.search(basket.toQueryDocument());
    const vm = resultsViewModel(response.payload);
    expect(vm.hits[0].docId).toBe("pat-litho-catheter");
    // solution facet dropped from the scored facets
    for (const hit of vm.hits) {
      expect(hit.facetScores.map((f) => f.facet)).not.toContain("solution");
    }
    expect(vm.hits.map((h) => h.docId)).toEqual([
      "pat-litho-catheter",
      "pat-polished-stent",
      "pat-drug-stent",
      "pat-rough-conduit",
      "pat-pipeline-liner",
      "pat-sharkskin-hull",
      "pat-balloon-catheter",
      "npl-golf-dimples",
      "npl-whale-tubercles",
      "pat-stent-graft",
    ]);

    const explanation = await api.explain("pat-litho-catheter", basket.toQueryDocument());
    const evm = explanationViewModel(explanation.payload);
    const application = evm.matches.find((m) => m.facet === "application")!;
    expect(application.path).toEqual(["stent", "catheter"]);
    const problem = evm.matches.find((m) => m.facet === "problem")!;
    expect(problem.path).toEqual(["occlusion", "bacteria-buildup"]);
  });

  it("every displayed number occurs byte-for-byte in captured traffic", async () => {
    const basket = demoBasket();
    const prior = resultsViewModel((await api.search(basket.toQueryDocument())).payload);
    basket.mode = "solution";
    const solution = resultsViewModel(
      (await api.search(basket.toQueryDocument())).payload,
    );
    const picture = pictureViewModel((await api.neighborhood("stent")).payload);
    const explanation = explanationViewModel(
      (await api.explain("pat-litho-catheter", basket.toQueryDocument())).payload,
    );

    const blob = traffic.join("\n");
    for (const vm of [prior, solution, picture, explanation] as const) {
      for (const shown of displayedNumbers(vm)) {
        expect(blob, `number ${shown} must come from the API`).toContain(shown);
      }
    }
    // and the scenario scores are the server's exact strings
    expect(solution.hits[0].scoreRaw).toBe("0.8825");
  });

  it("search responses are stable across repeats (read-only API)", async () => {
    const basket = demoBasket();
    const first = await api.search(basket.toQueryDocument());
    const second = await api.search(basket.toQueryDocument());
    expect(first.raw).toBe(second.raw);
  });
});
