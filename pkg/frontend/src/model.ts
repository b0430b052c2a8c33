/*
 * model.ts
 *
 * Client-side query state. The basket holds per-facet class selections
 * with weights plus the mode and expansion controls; it never computes
 * a score — it only assembles the query document the API expects.
 */

export const FACETS = [
  "technology_science",
  "application",
  "operating_mode",
  "problem",
  "solution",
] as const;

export type Facet = (typeof FACETS)[number];

export type Mode = "prior_art" | "solution";

export const FACET_LABELS: Record<Facet, string> = {
  technology_science: "Technology / Science",
  application: "Application",
  operating_mode: "Operating mode",
  problem: "Problem",
  solution: "Solution",
};

export interface BasketSelection {
  classId: string;
  weight: number;
  label: string;
}

export interface QueryDocument {
  mode: Mode;
  h: number;
  theta: number;
  selections: Partial<Record<Facet, [string, number][]>>;
}

export class QueryBasket {
  mode: Mode = "prior_art";
  hops = 3;
  theta = 0.05;
  private readonly selections = new Map<Facet, BasketSelection[]>();

  /** Add or update one selection; re-adding a class replaces its weight. */
  addSelection(facet: Facet, classId: string, weight: number, label = classId): void {
    const rows = this.selections.get(facet) ?? [];
    const existing = rows.find((row) => row.classId === classId);
    if (existing) {
      existing.weight = weight;
      existing.label = label;
    } else {
      rows.push({ classId, weight, label });
      this.selections.set(facet, rows);
    }
  }

  removeSelection(facet: Facet, classId: string): void {
    const rows = this.selections.get(facet) ?? [];
    const remaining = rows.filter((row) => row.classId !== classId);
    if (remaining.length) {
      this.selections.set(facet, remaining);
    } else {
      this.selections.delete(facet);
    }
  }

  selectionsFor(facet: Facet): readonly BasketSelection[] {
    return this.selections.get(facet) ?? [];
  }

  /** Solution-facet selections stay in the basket but are inert in
   * solution mode; the view greys them out. */
  isFacetDisabled(facet: Facet): boolean {
    return this.mode === "solution" && facet === "solution";
  }

  activeFacets(): Facet[] {
    return FACETS.filter(
      (facet) => this.selectionsFor(facet).length > 0 && !this.isFacetDisabled(facet),
    );
  }

  canSearch(): boolean {
    return this.activeFacets().length > 0;
  }

  toQueryDocument(): QueryDocument {
    const selections: Partial<Record<Facet, [string, number][]>> = {};
    for (const facet of FACETS) {
      const rows = this.selectionsFor(facet);
      if (rows.length) {
        selections[facet] = rows.map((row) => [row.classId, row.weight]);
      }
    }
    return { mode: this.mode, h: this.hops, theta: this.theta, selections };
  }

  clear(): void {
    this.selections.clear();
  }
}
