/*
 * viewmodel.ts
 *
 * Pure transforms from API payloads to render-ready structures. All
 * numbers keep the server's raw text; layout positions derive from the
 * numeric value but are presentation-only. Keeping this DOM-free makes
 * the invariants testable: vertical order must equal the API's neighbor
 * order, and every displayed score string must come from the payload.
 */

import {
  RawValue,
  asArray,
  asBoolean,
  asNumber,
  asObject,
  asString,
} from "./rawjson.js";

export interface ClassCardVM {
  classId: string;
  label: string;
  definition: string;
  fallback: boolean;
}

export interface NeighborVM extends ClassCardVM {
  weightRaw: string;
  weight: number;
  relation: string;
  provenance: string[];
  /** Vertical offset as a percentage: proportional to 1 - similarity,
   * so less similar classes sit higher above the focal class. */
  offsetPct: number;
}

export interface PictureVM {
  focal: ClassCardVM;
  above: NeighborVM[];
  instances: NeighborVM[];
}

function classCard(value: RawValue, context: string): ClassCardVM {
  const obj = asObject(value, context);
  return {
    classId: asString(obj["id"], `${context}.id`),
    label: asString(obj["label"], `${context}.label`),
    definition: asString(obj["definition"], `${context}.definition`),
    fallback: asBoolean(obj["fallback"], `${context}.fallback`),
  };
}

export function pictureViewModel(payload: RawValue): PictureVM {
  const body = asObject(payload, "neighborhood");
  const above: NeighborVM[] = [];
  const instances: NeighborVM[] = [];
  for (const [i, row] of asArray(body["neighbors"], "neighbors").entries()) {
    const obj = asObject(row, `neighbors[${i}]`);
    const weightRaw = asNumber(obj["weight"], `neighbors[${i}].weight`);
    const vm: NeighborVM = {
      classId: asString(obj["class"], `neighbors[${i}].class`),
      label: asString(obj["label"], `neighbors[${i}].label`),
      definition: asString(obj["definition"], `neighbors[${i}].definition`),
      fallback: asBoolean(obj["fallback"], `neighbors[${i}].fallback`),
      weightRaw: weightRaw.raw,
      weight: weightRaw.value,
      relation: asString(obj["relation"], `neighbors[${i}].relation`),
      provenance: asArray(obj["provenance"], `neighbors[${i}].provenance`).map((p, j) =>
        asString(p, `neighbors[${i}].provenance[${j}]`),
      ),
      offsetPct: Math.round((1 - weightRaw.value) * 1000) / 10,
    };
    if (vm.relation === "instance") {
      instances.push(vm); // instances render only beneath the focal class
    } else {
      above.push(vm);
    }
  }
  return { focal: classCard(body["class"], "class"), above, instances };
}

export interface FacetScoreVM {
  facet: string;
  valueRaw: string;
  value: number;
  barPct: number;
}

export interface HitVM {
  docId: string;
  scoreRaw: string;
  score: number;
  facetScores: FacetScoreVM[];
}

export interface ResultsVM {
  hits: HitVM[];
  total: number;
}

export function resultsViewModel(payload: RawValue): ResultsVM {
  const body = asObject(payload, "results");
  const hits: HitVM[] = [];
  for (const [i, row] of asArray(body["hits"], "hits").entries()) {
    const obj = asObject(row, `hits[${i}]`);
    const score = asNumber(obj["score"], `hits[${i}].score`);
    const facetScores: FacetScoreVM[] = [];
    const scores = asObject(obj["facet_scores"], `hits[${i}].facet_scores`);
    for (const [facet, value] of Object.entries(scores)) {
      const raw = asNumber(value, `hits[${i}].facet_scores.${facet}`);
      facetScores.push({
        facet,
        valueRaw: raw.raw,
        value: raw.value,
        barPct: Math.round(raw.value * 1000) / 10,
      });
    }
    hits.push({
      docId: asString(obj["doc"], `hits[${i}].doc`),
      scoreRaw: score.raw,
      score: score.value,
      facetScores,
    });
  }
  return { hits, total: asNumber(body["total"], "total").value };
}

export interface MatchVM {
  facet: string;
  queryClass: string;
  path: string[];
  matchedClass: string;
  matchedDegreeRaw: string;
  similarityRaw: string;
  weightRaw: string;
  contributionRaw: string;
}

export interface ExplanationVM {
  docId: string;
  scoreRaw: string;
  matches: MatchVM[];
}

export function explanationViewModel(payload: RawValue): ExplanationVM {
  const body = asObject(payload, "explanation");
  const matches: MatchVM[] = [];
  for (const [facet, value] of Object.entries(asObject(body["matches"], "matches"))) {
    const match = asObject(value, `matches.${facet}`);
    matches.push({
      facet,
      queryClass: asString(match["query_class"], "query_class"),
      path: asArray(match["path"], "path").map((p, i) => asString(p, `path[${i}]`)),
      matchedClass: asString(match["matched_class"], "matched_class"),
      matchedDegreeRaw: asNumber(match["matched_degree"], "matched_degree").raw,
      similarityRaw: asNumber(match["similarity"], "similarity").raw,
      weightRaw: asNumber(match["weight"], "weight").raw,
      contributionRaw: asNumber(match["contribution"], "contribution").raw,
    });
  }
  return {
    docId: asString(body["doc"], "doc"),
    scoreRaw: asNumber(body["score"], "score").raw,
    matches,
  };
}

/** Every raw number string shown by a view model; used by tests to
 * assert each displayed value literally occurs in captured API traffic. */
export function displayedNumbers(vm: ResultsVM | ExplanationVM | PictureVM): string[] {
  const out: string[] = [];
  if ("hits" in vm) {
    for (const hit of vm.hits) {
      out.push(hit.scoreRaw);
      out.push(...hit.facetScores.map((f) => f.valueRaw));
    }
  } else if ("matches" in vm) {
    out.push(vm.scoreRaw);
    for (const match of vm.matches) {
      out.push(match.matchedDegreeRaw, match.similarityRaw, match.weightRaw, match.contributionRaw);
    }
  } else {
    out.push(...vm.above.map((n) => n.weightRaw), ...vm.instances.map((n) => n.weightRaw));
  }
  return out;
}
