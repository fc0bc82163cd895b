/** Shell: tabbed layout wiring the queue, search/add, and stats views.
 *
 * Configuration is limited to the API base URL and token, read from the
 * query string (?api=...&token=...&reviewer=...) with localStorage
 * fallbacks.
 */

import { ApiClient } from "./api.js";
import { el } from "./dom.js";
import { ReviewQueueView } from "./queue.js";
import { ManualAddForm, SearchView } from "./search.js";
import { StatsView } from "./stats.js";

export interface AppConfig {
  apiBase: string;
  token: string | null;
  reviewer: string;
}

export function readConfig(search: string, storage: Storage | null): AppConfig {
  const params = new URLSearchParams(search);
  const stored = (key: string) => storage?.getItem(`qabas.${key}`) ?? null;
  return {
    apiBase: params.get("api") ?? stored("api") ?? "",
    token: params.get("token") ?? stored("token"),
    reviewer: params.get("reviewer") ?? stored("reviewer") ?? "reviewer",
  };
}

export class App {
  readonly root: HTMLElement;
  readonly queue: ReviewQueueView;
  readonly search: SearchView;
  readonly addForm: ManualAddForm;
  readonly stats: StatsView;

  constructor(config: AppConfig) {
    const api = new ApiClient(config.apiBase, config.token);
    this.stats = new StatsView(api);
    this.queue = new ReviewQueueView(api, () => config.reviewer, () => {
      void this.stats.refresh();
    });
    this.search = new SearchView(api);
    this.addForm = new ManualAddForm(api);

    const panes: [string, HTMLElement][] = [
      ["Queue", this.queue.root],
      ["Search", this.search.root],
      ["Add", this.addForm.root],
      ["Stats", this.stats.root],
    ];
    const nav = el("nav", { class: "tabs", role: "tablist" });
    const mainEl = el("main");
    panes.forEach(([name, pane], index) => {
      const tab = el(
        "button",
        { role: "tab", class: index === 0 ? "active" : "" },
        [name],
      );
      tab.addEventListener("click", () => {
        nav.querySelectorAll("button").forEach((b) => b.classList.remove("active"));
        tab.classList.add("active");
        panes.forEach(([, p]) => p.classList.add("hidden"));
        pane.classList.remove("hidden");
        if (pane === this.stats.root) void this.stats.refresh();
        if (pane === this.queue.root) this.queue.root.focus();
      });
      nav.append(tab);
      if (index > 0) pane.classList.add("hidden");
      mainEl.append(pane);
    });
    this.root = el("div", { class: "app" }, [
      el("header", { class: "app-header" }, [el("h1", {}, ["Lemma review"])]),
      nav,
      mainEl,
    ]);
  }

  async start(): Promise<void> {
    await this.queue.refresh();
    await this.stats.refresh();
    this.queue.root.focus();
  }
}
