// The search box: suggestions on focus while empty, live autocomplete per
// keystroke (debounced), full search on Enter. Results render grouped by
// entity kind with the overall/topical/social breakdown per row.

import { ApiClient, ScoredResult, Suggestion } from "./api.js";
import { Debounced, debounce } from "./debounce.js";
import { KIND_LABELS, KIND_SEQUENCE, renderScore } from "./format.js";
import { LatestGate } from "./latest.js";

export interface SearchBoxOptions {
  api: ApiClient;
  input: HTMLInputElement;
  qlist: HTMLElement;
  results: HTMLElement;
  banner: HTMLElement;
  getUser: () => string;
  debounceMs?: number;
}

export class SearchBox {
  private gate = new LatestGate();
  private queueAutocomplete: Debounced<[string]>;
  private inflight: AbortController | null = null;

  constructor(private opts: SearchBoxOptions) {
    this.queueAutocomplete = debounce(
      (text: string) => void this.fetchAutocomplete(text),
      opts.debounceMs ?? 150,
    );
    opts.input.addEventListener("focus", () => this.onEdit());
    opts.input.addEventListener("input", () => this.onEdit());
    opts.input.addEventListener("keydown", (event) => {
      if ((event as KeyboardEvent).key === "Enter") {
        void this.submit();
      }
    });
  }

  onEdit(): void {
    const text = this.opts.input.value.trim();
    if (text === "") {
      this.queueAutocomplete.cancel();
      void this.fetchSuggestions();
    } else {
      this.queueAutocomplete(text);
    }
  }

  async submit(): Promise<void> {
    const text = this.opts.input.value.trim();
    if (text === "") {
      return;
    }
    this.queueAutocomplete.cancel();
    this.inflight?.abort();
    const token = this.gate.next();
    try {
      const response = await this.opts.api.search(this.opts.getUser(), text);
      if (!this.gate.isCurrent(token)) {
        return;
      }
      this.hideBanner();
      this.opts.qlist.replaceChildren();
      this.renderResults(response.results);
    } catch {
      if (this.gate.isCurrent(token)) {
        this.showBanner();
      }
    }
  }

  private nextSignal(): { token: number; signal: AbortSignal } {
    // cancel whatever is still flying: at most one live Qlist request
    this.inflight?.abort();
    this.inflight = new AbortController();
    return { token: this.gate.next(), signal: this.inflight.signal };
  }

  private async fetchSuggestions(): Promise<void> {
    const { token, signal } = this.nextSignal();
    try {
      const response = await this.opts.api.suggestions(this.opts.getUser(), signal);
      if (!this.gate.isCurrent(token)) {
        return;
      }
      this.hideBanner();
      this.renderSuggestions(response.suggestions);
    } catch {
      if (this.gate.isCurrent(token)) {
        this.showBanner();
      }
    }
  }

  private async fetchAutocomplete(text: string): Promise<void> {
    const { token, signal } = this.nextSignal();
    try {
      const response = await this.opts.api.autocomplete(
        this.opts.getUser(), text, 10, signal,
      );
      if (!this.gate.isCurrent(token)) {
        return; // a newer request owns the list now
      }
      this.hideBanner();
      this.renderQlist(response.results);
    } catch {
      if (this.gate.isCurrent(token)) {
        this.showBanner();
      }
    }
  }

  private renderSuggestions(suggestions: Suggestion[]): void {
    const sections: Array<[string, Suggestion[]]> = [
      ["Recent", suggestions.filter((s) => s.source === "history")],
      ["Trending", suggestions.filter((s) => s.source === "trending")],
    ];
    const nodes: HTMLElement[] = [];
    for (const [label, items] of sections) {
      if (items.length === 0) {
        continue;
      }
      const heading = document.createElement("li");
      heading.className = "qlist-section";
      heading.textContent = label;
      nodes.push(heading);
      for (const item of items) {
        const row = document.createElement("li");
        row.className = `qlist-item suggestion-${item.source}`;
        row.textContent = item.kind === "entity" ? `→ ${item.entity}` : item.text ?? "";
        nodes.push(row);
      }
    }
    this.opts.qlist.replaceChildren(...nodes);
  }

  private renderQlist(results: ScoredResult[]): void {
    const nodes = results.map((result) => {
      const row = document.createElement("li");
      row.className = `qlist-item kind-${result.kind}`;
      const name = document.createElement("span");
      name.className = "qlist-name";
      name.textContent = result.name ?? result.id;
      const score = document.createElement("span");
      score.className = "qlist-score score";
      score.textContent = renderScore(result.overall);
      row.append(name, score);
      return row;
    });
    this.opts.qlist.replaceChildren(...nodes);
  }

  private renderResults(results: ScoredResult[]): void {
    const groups = new Map<string, ScoredResult[]>();
    for (const result of results) {
      const bucket = groups.get(result.kind);
      if (bucket) {
        bucket.push(result);
      } else {
        groups.set(result.kind, [result]);
      }
    }
    const nodes: HTMLElement[] = [];
    const legend = document.createElement("div");
    legend.className = "legend";
    for (const kind of KIND_SEQUENCE) {
      if (!groups.has(kind)) {
        continue;
      }
      const chip = document.createElement("span");
      chip.className = `legend-chip kind-${kind}`;
      chip.textContent = KIND_LABELS[kind] ?? kind;
      legend.append(chip);
    }
    nodes.push(legend);

    for (const kind of KIND_SEQUENCE) {
      const bucket = groups.get(kind);
      if (!bucket) {
        continue;
      }
      const section = document.createElement("section");
      section.className = `result-group kind-${kind}`;
      const heading = document.createElement("h3");
      heading.textContent = KIND_LABELS[kind] ?? kind;
      section.append(heading);
      for (const result of bucket) {
        section.append(this.renderRow(result));
      }
      nodes.push(section);
    }
    this.opts.results.replaceChildren(...nodes);
  }

  private renderRow(result: ScoredResult): HTMLElement {
    const row = document.createElement("div");
    row.className = "result-row";
    row.dataset.id = result.id;
    const name = document.createElement("span");
    name.className = "result-name";
    name.textContent = result.name ?? result.id;
    row.append(name);
    const breakdown: Array<[string, number]> = [
      ["S", result.overall],
      ["S_T", result.topical],
      ["S_U", result.social],
    ];
    for (const [label, value] of breakdown) {
      const cell = document.createElement("span");
      cell.className = `score score-${label.toLowerCase()}`;
      cell.title = label;
      cell.textContent = renderScore(value);
      row.append(cell);
    }
    return row;
  }

  private showBanner(): void {
    this.opts.banner.hidden = false;
  }

  private hideBanner(): void {
    this.opts.banner.hidden = true;
  }
}
