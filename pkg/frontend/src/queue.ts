/** The review queue: side-by-side candidate pairs with keyboard-first decisions.
 *
 * Number keys pick a relation for the selected row, Enter confirms it,
 * Delete/"r" rejects.  A 409 from the server (someone else decided first)
 * shows a conflict banner and refreshes the queue.  Rows disappear on
 * success and the confirmed counter ticks up.
 */

import { ApiClient, ApiError } from "./api.js";
import { arabicList, clear, el } from "./dom.js";
import { RELATIONS, RELATION_BY_KEY } from "./relations.js";
import type { Correspondence, QueueSide } from "./types.js";

const FORM_SLOTS: [string, string][] = [
  ["singulars", "singular"],
  ["duals", "dual"],
  ["plurals", "plural"],
  ["pv", "PV"],
  ["iv", "IV"],
  ["cv", "CV"],
];

export class ReviewQueueView {
  readonly root: HTMLElement;
  private listEl: HTMLElement;
  private bannerEl: HTMLElement;
  private counterEl: HTMLElement;
  private items: Correspondence[] = [];
  private selectedIndex = 0;
  private pickedRelation = new Map<number, string>();
  private confirmedCount = 0;
  private page = 1;

  constructor(
    private api: ApiClient,
    private reviewer: () => string,
    private onDecided: () => void = () => {},
  ) {
    this.bannerEl = el("div", { class: "banner hidden", role: "alert" });
    this.counterEl = el("span", { class: "confirmed-counter" }, ["0"]);
    this.listEl = el("div", { class: "queue-list" });
    this.root = el("section", { class: "queue-view" }, [
      el("header", {}, [
        el("h2", {}, ["Review queue"]),
        el("span", { class: "hint" }, [
          "keys: 1-6 core, 7-0/x extended, Enter confirm, r reject, ↑↓ move",
        ]),
        el("span", {}, ["confirmed: ", this.counterEl]),
      ]),
      this.bannerEl,
      this.listEl,
    ]);
    this.root.tabIndex = 0;
    this.root.addEventListener("keydown", (event) => this.onKey(event));
  }

  async refresh(): Promise<void> {
    const page = await this.api.queue("auto", this.page);
    this.items = page.items;
    if (this.selectedIndex >= this.items.length) {
      this.selectedIndex = Math.max(0, this.items.length - 1);
    }
    this.render();
  }

  get rowCount(): number {
    return this.items.length;
  }

  private banner(text: string | null): void {
    if (text === null) {
      this.bannerEl.classList.add("hidden");
      this.bannerEl.textContent = "";
    } else {
      this.bannerEl.classList.remove("hidden");
      this.bannerEl.textContent = text;
    }
  }

  private render(): void {
    clear(this.listEl);
    if (this.items.length === 0) {
      this.listEl.append(
        el("p", { class: "queue-clear" }, ["Queue clear — nothing awaiting review."]),
      );
      return;
    }
    this.items.forEach((item, index) => {
      this.listEl.append(this.renderRow(item, index === this.selectedIndex));
    });
  }

  private renderSide(side: QueueSide): HTMLElement {
    const box = el("div", { class: "lemma-card" });
    box.append(el("div", { class: "lemma-ref" }, [side.ref]));
    if (side.missing) {
      box.append(el("p", { class: "muted" }, ["(lemma not loaded locally)"]));
      return box;
    }
    box.append(
      el("div", { class: "lemma-spellings" }, [arabicList(side.spellings ?? [])]),
    );
    box.append(el("div", { class: "lemma-pos" }, [side.pos ?? "no POS"]));
    const forms = side.forms ?? {};
    for (const [slot, label] of FORM_SLOTS) {
      const words = forms[slot];
      if (words && words.length > 0) {
        box.append(
          el("div", { class: "form-row" }, [
            el("span", { class: "form-label" }, [label + ": "]),
            arabicList(words),
          ]),
        );
      }
    }
    if (side.roots && side.roots.length > 0) {
      box.append(
        el("div", { class: "form-row" }, [
          el("span", { class: "form-label" }, ["root: "]),
          arabicList(side.roots),
        ]),
      );
    }
    return box;
  }

  private renderRow(item: Correspondence, selected: boolean): HTMLElement {
    const picked = this.pickedRelation.get(item.id) ?? item.suggested_relation;
    const picker = el("div", { class: "relation-picker", role: "radiogroup" });
    for (const relation of RELATIONS) {
      const button = el(
        "button",
        {
          class: "relation" + (relation.code === picked ? " picked" : ""),
          "data-relation": relation.code,
          title: relation.label,
        },
        [
          `${relation.key} ${relation.code}`,
          el("span", { class: "precision-badge" }, [`${relation.precision}%`]),
        ],
      );
      button.addEventListener("click", () => {
        this.pickedRelation.set(item.id, relation.code);
        this.selectedIndex = this.items.findIndex((x) => x.id === item.id);
        this.render();
      });
      picker.append(button);
    }
    const confirmBtn = el("button", { class: "confirm" }, ["Confirm"]);
    confirmBtn.addEventListener("click", () => void this.decide(item, { relation: picked }));
    const rejectBtn = el("button", { class: "reject" }, ["Reject"]);
    rejectBtn.addEventListener("click", () => void this.decide(item, { reject: true }));
    return el(
      "article",
      {
        class: "queue-row" + (selected ? " selected" : ""),
        "data-id": String(item.id),
      },
      [
        el("div", { class: "pair" }, [this.renderSide(item.l1), this.renderSide(item.l2)]),
        el("div", { class: "row-meta" }, [
          el("span", { class: "provenance" }, [item.provenance]),
          el("span", { class: "suggested" }, [item.suggested_label]),
        ]),
        picker,
        el("div", { class: "actions" }, [confirmBtn, rejectBtn]),
      ],
    );
  }

  private async decide(
    item: Correspondence,
    decision: { relation?: string; reject?: boolean },
  ): Promise<void> {
    this.banner(null);
    try {
      await this.api.decide(item.id, decision, this.reviewer());
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.banner("Already decided by someone else — queue refreshed.");
        await this.refresh();
        return;
      }
      this.banner(err instanceof Error ? err.message : String(err));
      return;
    }
    if (!decision.reject) this.confirmedCount += 1;
    this.counterEl.textContent = String(this.confirmedCount);
    this.items = this.items.filter((x) => x.id !== item.id);
    this.pickedRelation.delete(item.id);
    if (this.selectedIndex >= this.items.length) {
      this.selectedIndex = Math.max(0, this.items.length - 1);
    }
    this.render();
    this.onDecided();
  }

  private onKey(event: KeyboardEvent): void {
    const item = this.items[this.selectedIndex];
    if (!item) return;
    if (event.key === "ArrowDown") {
      this.selectedIndex = Math.min(this.selectedIndex + 1, this.items.length - 1);
      this.render();
    } else if (event.key === "ArrowUp") {
      this.selectedIndex = Math.max(this.selectedIndex - 1, 0);
      this.render();
    } else if (event.key === "Enter") {
      const picked = this.pickedRelation.get(item.id) ?? item.suggested_relation;
      void this.decide(item, { relation: picked });
    } else if (event.key === "r" || event.key === "Delete") {
      void this.decide(item, { reject: true });
    } else {
      const relation = RELATION_BY_KEY.get(event.key);
      if (relation) {
        this.pickedRelation.set(item.id, relation.code);
        this.render();
      } else {
        return;
      }
    }
    event.preventDefault();
  }
}
