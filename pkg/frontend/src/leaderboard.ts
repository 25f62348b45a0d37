// Leaderboard panel: context/window/type/design selectors over the
// /leaderboard endpoint, with the active user's row flagged. Concept
// spaces default to the absolute hybrid, course spaces to the 50-50.

import { ApiClient } from "./api.js";
import { renderScore } from "./format.js";
import { LatestGate } from "./latest.js";

export const DESIGN_BY_SPACE: Record<string, string> = {
  concept: "hybrid-absolute",
  course: "hybrid50",
};

export interface LeaderboardPanelOptions {
  api: ApiClient;
  contextInput: HTMLInputElement;
  spaceSelect: HTMLSelectElement; // concept | course
  windowSelect: HTMLSelectElement;
  kindSelect: HTMLSelectElement;
  designSelect: HTMLSelectElement;
  rows: HTMLElement;
  empty: HTMLElement;
  getUser: () => string;
}

export class LeaderboardPanel {
  private gate = new LatestGate();

  constructor(private opts: LeaderboardPanelOptions) {
    opts.spaceSelect.addEventListener("change", () => {
      this.applyDesignDefault();
      void this.refresh();
    });
    for (const select of [opts.windowSelect, opts.kindSelect, opts.designSelect]) {
      select.addEventListener("change", () => void this.refresh());
    }
    opts.contextInput.addEventListener("change", () => void this.refresh());
    this.applyDesignDefault();
  }

  applyDesignDefault(): void {
    const fallback = DESIGN_BY_SPACE[this.opts.spaceSelect.value];
    if (fallback) {
      this.opts.designSelect.value = fallback;
    }
  }

  async refresh(): Promise<void> {
    const context = this.opts.contextInput.value.trim();
    if (context === "") {
      this.renderEmpty("Pick a concept or course space to rank.");
      return;
    }
    const token = this.gate.next();
    try {
      const view = await this.opts.api.leaderboard({
        user: this.opts.getUser(),
        context,
        window: this.opts.windowSelect.value,
        kind: this.opts.kindSelect.value,
        design: this.opts.designSelect.value,
      });
      if (!this.gate.isCurrent(token)) {
        return;
      }
      if (view.rows.length === 0) {
        this.renderEmpty("No activity in this window yet.");
        return;
      }
      this.opts.empty.hidden = true;
      this.opts.rows.replaceChildren(
        ...view.rows.map((row) => {
          const element = document.createElement("tr");
          element.className = row.active ? "lb-row active-user" : "lb-row";
          const rank = document.createElement("td");
          rank.textContent = `#${row.rank}`;
          const user = document.createElement("td");
          user.className = "lb-user";
          user.textContent = row.user;
          const score = document.createElement("td");
          score.className = "score lb-score";
          score.textContent = renderScore(row.score);
          element.append(rank, user, score);
          return element;
        }),
      );
    } catch {
      this.renderEmpty("Leaderboard unavailable; try again.");
    }
  }

  private renderEmpty(message: string): void {
    this.opts.rows.replaceChildren();
    this.opts.empty.hidden = false;
    this.opts.empty.textContent = message;
  }
}
