/** Lemma search plus the manual-add form.
 *
 * The form pre-checks every field client-side (same invariants as the
 * server) and renders the server's per-field 422 errors when the
 * authoritative check still fails.
 */

import { ApiClient, ApiError } from "./api.js";
import { arabicList, clear, el } from "./dom.js";
import type { FieldError, LemmaPayload, LemmaSummary } from "./types.js";
import { POS_TAGS, validateLemmaPayload } from "./validate.js";

export class SearchView {
  readonly root: HTMLElement;
  private resultsEl: HTMLElement;
  private input: HTMLInputElement;

  constructor(private api: ApiClient) {
    this.input = el("input", {
      type: "search",
      dir: "auto",
      placeholder: "ابحث…",
      "aria-label": "search lemmas",
    });
    this.resultsEl = el("div", { class: "search-results" });
    const button = el("button", {}, ["Search"]);
    button.addEventListener("click", () => void this.search());
    this.input.addEventListener("keydown", (event) => {
      if (event.key === "Enter") void this.search();
    });
    this.root = el("section", { class: "search-view" }, [
      el("h2", {}, ["Lemma search"]),
      el("div", { class: "search-bar" }, [this.input, button]),
      this.resultsEl,
    ]);
  }

  async search(): Promise<void> {
    clear(this.resultsEl);
    let page;
    try {
      page = await this.api.searchLemmas(this.input.value.trim());
    } catch (err) {
      this.resultsEl.append(
        el("p", { class: "error" }, [err instanceof Error ? err.message : String(err)]),
      );
      return;
    }
    if (page.total === 0) {
      this.resultsEl.append(el("p", { class: "muted" }, ["No matching lemmas."]));
      return;
    }
    const table = el("table", { class: "results-table" }, [
      el("thead", {}, [
        el("tr", {}, [
          el("th", {}, ["ref"]),
          el("th", {}, ["spellings"]),
          el("th", {}, ["POS"]),
          el("th", {}, ["mapped"]),
        ]),
      ]),
    ]);
    const body = el("tbody");
    for (const item of page.items) {
      body.append(this.renderResult(item));
    }
    table.append(body);
    this.resultsEl.append(
      el("p", { class: "muted" }, [`${page.total} result(s)`]),
      table,
    );
  }

  private renderResult(item: LemmaSummary): HTMLElement {
    return el("tr", { class: "result-row", "data-ref": item.ref }, [
      el("td", {}, [item.ref]),
      el("td", {}, [arabicList(item.spellings)]),
      el("td", {}, [item.pos ?? ""]),
      el("td", {}, [item.mapped ? "✓" : ""]),
    ]);
  }
}

interface Field {
  name: string;
  input: HTMLInputElement | HTMLSelectElement;
  errorEl: HTMLElement;
}

export class ManualAddForm {
  readonly root: HTMLElement;
  private fields = new Map<string, Field>();
  private statusEl: HTMLElement;

  constructor(
    private api: ApiClient,
    private onCreated: (id: number) => void = () => {},
  ) {
    this.statusEl = el("p", { class: "form-status" });
    const form = el("form", { class: "manual-add", novalidate: "novalidate" });
    form.append(
      this.textField("spellings", "Spellings (| separated)", { dir: "auto" }),
      this.selectField("pos", "POS", ["", ...POS_TAGS]),
      this.selectField("gender", "Gender", ["", "MASC", "FEM"]),
      this.selectField("number", "Number", ["", "SING", "DUAL", "PLURAL"]),
      this.selectField("aspect", "Aspect", ["", "PV", "IV", "CV", "PV_PASS", "IV_PASS"]),
      this.textField("roots", "Roots (; separated, radicals spaced)", { dir: "auto" }),
      this.textField("dialect", "Dialect tag (empty, MSA, Classical, or a dialect)"),
      this.textField("msa_counterpart", "MSA counterpart id", { type: "number" }),
      this.checkboxField("all_senses_proper", "All senses are proper nouns"),
    );
    const submit = el("button", { type: "submit" }, ["Add lemma"]);
    form.append(submit, this.statusEl);
    form.addEventListener("submit", (event) => {
      event.preventDefault();
      void this.submit();
    });
    this.root = el("section", { class: "manual-add-view" }, [
      el("h2", {}, ["Add a lemma"]),
      form,
    ]);
  }

  private wrap(name: string, label: string, input: HTMLInputElement | HTMLSelectElement) {
    const errorEl = el("span", { class: "field-error", "data-field": name });
    this.fields.set(name, { name, input, errorEl });
    return el("label", { class: "field", "data-field-wrap": name }, [
      label,
      input,
      errorEl,
    ]);
  }

  private textField(name: string, label: string, attrs: Record<string, string> = {}) {
    return this.wrap(name, label, el("input", { name, type: "text", ...attrs }));
  }

  private checkboxField(name: string, label: string) {
    return this.wrap(name, label, el("input", { name, type: "checkbox" }));
  }

  private selectField(name: string, label: string, options: string[]) {
    const select = el("select", { name });
    for (const option of options) {
      select.append(el("option", { value: option }, [option || "—"]));
    }
    return this.wrap(name, label, select);
  }

  value(name: string): string {
    return this.fields.get(name)!.input.value.trim();
  }

  setValue(name: string, value: string | boolean): void {
    const input = this.fields.get(name)!.input;
    if (typeof value === "boolean") {
      (input as HTMLInputElement).checked = value;
    } else {
      input.value = value;
    }
  }

  payload(): LemmaPayload {
    const payload: LemmaPayload = {
      spellings: this.value("spellings").split("|").map((s) => s.trim()).filter(Boolean),
      pos: this.value("pos"),
    };
    for (const name of ["gender", "number", "aspect", "dialect"] as const) {
      const value = this.value(name);
      if (value) payload[name] = value;
    }
    const roots = this.value("roots");
    if (roots) payload.roots = roots.split(";").map((s) => s.trim()).filter(Boolean);
    const msa = this.value("msa_counterpart");
    if (msa) payload.msa_counterpart = Number(msa);
    if ((this.fields.get("all_senses_proper")!.input as HTMLInputElement).checked) {
      payload.all_senses_proper = true;
    }
    return payload;
  }

  showErrors(errors: FieldError[]): void {
    for (const field of this.fields.values()) {
      field.errorEl.textContent = "";
    }
    for (const error of errors) {
      const field = this.fields.get(error.field);
      if (field) {
        field.errorEl.textContent = field.errorEl.textContent
          ? `${field.errorEl.textContent}; ${error.message}`
          : error.message;
      } else {
        this.statusEl.textContent += ` ${error.field}: ${error.message}`;
      }
    }
  }

  async submit(): Promise<boolean> {
    this.statusEl.textContent = "";
    const payload = this.payload();
    const problems = validateLemmaPayload(payload);
    this.showErrors(problems);
    if (problems.length > 0) {
      this.statusEl.textContent = "Fix the highlighted fields.";
      return false;
    }
    try {
      const created = await this.api.createLemma(payload);
      this.statusEl.textContent =
        `Created qabas:${created.id}` +
        (created.warnings.length ? ` — ${created.warnings.join("; ")}` : "");
      this.onCreated(created.id);
      return true;
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        this.showErrors(err.fieldErrors);
        this.statusEl.textContent = "Rejected by the server.";
      } else {
        this.statusEl.textContent = err instanceof Error ? err.message : String(err);
      }
      return false;
    }
  }
}
