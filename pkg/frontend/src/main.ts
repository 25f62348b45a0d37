import { ApiClient } from "./api.js";
import { LeaderboardPanel } from "./leaderboard.js";
import { SearchBox } from "./searchbox.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) {
    throw new Error(`missing #${id}`);
  }
  return element as T;
}

const api = new ApiClient("");
const userInput = byId<HTMLInputElement>("active-user");

new SearchBox({
  api,
  input: byId<HTMLInputElement>("search-input"),
  qlist: byId("qlist"),
  results: byId("results"),
  banner: byId("error-banner"),
  getUser: () => userInput.value.trim(),
});

const panel = new LeaderboardPanel({
  api,
  contextInput: byId<HTMLInputElement>("lb-context"),
  spaceSelect: byId<HTMLSelectElement>("lb-space"),
  windowSelect: byId<HTMLSelectElement>("lb-window"),
  kindSelect: byId<HTMLSelectElement>("lb-kind"),
  designSelect: byId<HTMLSelectElement>("lb-design"),
  rows: byId("lb-rows"),
  empty: byId("lb-empty"),
  getUser: () => userInput.value.trim(),
});

byId<HTMLButtonElement>("lb-refresh").addEventListener("click", () => void panel.refresh());
