/** Statistics dashboard: relation counts and POS coverage as sortable tables. */

import { ApiClient } from "./api.js";
import { clear, el } from "./dom.js";

type Cell = string | number;

/** A table whose header cells sort their column on click (toggling order). */
export function sortableTable(
  headers: string[],
  rows: Cell[][],
  className = "stats-table",
): HTMLTableElement {
  const table = el("table", { class: className });
  const thead = el("thead");
  const headRow = el("tr");
  const tbody = el("tbody");
  let sortColumn = -1;
  let ascending = true;

  const renderBody = (data: Cell[][]) => {
    clear(tbody);
    for (const row of data) {
      tbody.append(
        el("tr", {}, row.map((cell) =>
          el("td", { class: typeof cell === "number" ? "num" : "" }, [String(cell)]),
        )),
      );
    }
  };

  headers.forEach((header, index) => {
    const th = el("th", { role: "button", tabindex: "0" }, [header]);
    const sort = () => {
      ascending = sortColumn === index ? !ascending : true;
      sortColumn = index;
      const sorted = [...rows].sort((a, b) => {
        const x = a[index];
        const y = b[index];
        const cmp =
          typeof x === "number" && typeof y === "number"
            ? x - y
            : String(x).localeCompare(String(y));
        return ascending ? cmp : -cmp;
      });
      renderBody(sorted);
    };
    th.addEventListener("click", sort);
    th.addEventListener("keydown", (event) => {
      if (event.key === "Enter") sort();
    });
    headRow.append(th);
  });
  thead.append(headRow);
  table.append(thead, tbody);
  renderBody(rows);
  return table;
}

export class StatsView {
  readonly root: HTMLElement;
  private relationsEl: HTMLElement;
  private coverageEl: HTMLElement;
  private totalEl: HTMLElement;

  constructor(private api: ApiClient) {
    this.totalEl = el("span", { class: "relations-total" }, ["0"]);
    this.relationsEl = el("div", { class: "relations-stats" });
    this.coverageEl = el("div", { class: "coverage-stats" });
    this.root = el("section", { class: "stats-view" }, [
      el("h2", {}, ["Statistics"]),
      el("p", {}, ["Confirmed correspondences: ", this.totalEl]),
      this.relationsEl,
      this.coverageEl,
    ]);
  }

  async refresh(): Promise<void> {
    const relations = await this.api.relationStats();
    this.totalEl.textContent = String(relations.total);
    clear(this.relationsEl);
    this.relationsEl.append(
      sortableTable(
        ["relation", "label", "precision", "count"],
        Object.keys(relations.counts).map((code) => [
          code,
          relations.labels[code] ?? "",
          relations.precisions[code] ?? 0,
          relations.counts[code],
        ]),
        "stats-table relations-table",
      ),
    );
    const coverage = await this.api.coverageStats();
    clear(this.coverageEl);
    const rows = [
      ...coverage.nominal.map((r) => [r.key, ...r.counts] as Cell[]),
      ["NOMINAL total", ...coverage.nominal_total.counts] as Cell[],
      ...coverage.verb.map((r) => [r.key, ...r.counts] as Cell[]),
      ["VERB total", ...coverage.verb_total.counts] as Cell[],
      ["FUNCTIONAL", ...coverage.functional_total.counts] as Cell[],
      ["TOTAL", ...coverage.grand_total.counts] as Cell[],
    ];
    this.coverageEl.append(
      el("h3", {}, ["Lemmas per POS"]),
      sortableTable(["group", ...coverage.sources], rows, "stats-table coverage-table"),
    );
    if (coverage.corpora.length > 0) {
      this.coverageEl.append(
        el("h3", {}, ["Corpus linking"]),
        sortableTable(
          ["corpus", "tokens", "tokens mapped", "%", "lemmas", "lemmas mapped", "%"],
          coverage.corpora.map((c) => [
            c.corpus_id,
            c.tokens_total,
            c.tokens_mapped,
            c.token_percent,
            c.lemmas_total,
            c.lemmas_mapped,
            c.lemma_percent,
          ]),
          "stats-table corpora-table",
        ),
      );
    }
  }
}
