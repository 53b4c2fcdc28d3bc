// DOM wiring for the four-panel interface: a home screen with the four
// sonification options, per-panel selectors fed from /api/meta, playback,
// and the chart rendered next to every sonified output.

import { ApiError, type ApiClient } from "./api.js";
import { barChartSvg, lineChartSvg } from "./chart.js";
import type { Player } from "./player.js";
import {
  SONIFICATION_OPTIONS,
  initialState,
  enterMode,
  louderLabel,
  requestFor,
  selectorOptions,
  updateSelection,
  validateSelection,
  withMeta,
  withMetaError,
  type Mode,
  type Selection,
  type UiState,
} from "./state.js";

export interface AppDeps {
  api: ApiClient;
  player: Player;
}

export interface App {
  loadMeta(): Promise<void>;
  attemptPlay(): Promise<void>;
  getState(): UiState;
  root: HTMLElement;
}

const PANEL_TITLES: Record<Exclude<Mode, "home">, string> = {
  sequential: "Across the years",
  "compare-years": "Compare two years",
  "compare-regions": "Compare two states",
  "compare-categories": "Compare two crimes",
};

export function createApp(root: HTMLElement, deps: AppDeps): App {
  let state = initialState();

  function setState(next: UiState): void {
    state = next;
    render();
  }

  function select(
    id: string,
    label: string,
    options: string[],
    value: string,
    field: keyof Selection,
  ): HTMLElement {
    const wrap = document.createElement("label");
    wrap.className = "field";
    wrap.htmlFor = id;
    wrap.textContent = label;
    const control = document.createElement("select");
    control.id = id;
    const placeholder = document.createElement("option");
    placeholder.value = "";
    placeholder.textContent = `choose ${label.toLowerCase()}`;
    control.appendChild(placeholder);
    for (const option of options) {
      const el = document.createElement("option");
      el.value = option;
      el.textContent = option;
      control.appendChild(el);
    }
    control.value = value;
    control.addEventListener("change", () => {
      setState(updateSelection(state, { [field]: control.value } as Partial<Selection>));
    });
    wrap.appendChild(control);
    return wrap;
  }

  function banner(): HTMLElement | null {
    if (!state.metaError) return null;
    const el = document.createElement("div");
    el.className = "banner";
    el.textContent = `service unreachable: ${state.metaError} `;
    const retry = document.createElement("button");
    retry.textContent = "Retry";
    retry.className = "retry";
    retry.addEventListener("click", () => void loadMeta());
    el.appendChild(retry);
    return el;
  }

  function homePanel(): HTMLElement {
    const panel = document.createElement("section");
    panel.className = "panel home";
    const intro = document.createElement("p");
    intro.className = "intro";
    intro.textContent =
      "Listen to twelve years of reported crimes against women across Indian states. " +
      "Pick one of the four sonification options below; every option plays scream-like " +
      "sounds whose pitch, timbre and loudness follow the data, next to the matching graph.";
    panel.appendChild(intro);
    const list = document.createElement("div");
    list.className = "options";
    for (const option of SONIFICATION_OPTIONS) {
      const button = document.createElement("button");
      button.className = "option";
      button.dataset.mode = option.mode;
      const title = document.createElement("strong");
      title.textContent = option.title;
      const blurb = document.createElement("span");
      blurb.textContent = option.blurb;
      button.append(title, blurb);
      button.addEventListener("click", () => setState(enterMode(state, option.mode)));
      list.appendChild(button);
    }
    panel.appendChild(list);
    return panel;
  }

  function submodeRadios(): HTMLElement {
    const wrap = document.createElement("fieldset");
    wrap.className = "submode";
    const legend = document.createElement("legend");
    legend.textContent = "Sonify as";
    wrap.appendChild(legend);
    for (const submode of ["frequency", "amplitude"] as const) {
      const label = document.createElement("label");
      const radio = document.createElement("input");
      radio.type = "radio";
      radio.name = "submode";
      radio.value = submode;
      radio.checked = state.selection.submode === submode;
      radio.addEventListener("change", () => setState(updateSelection(state, { submode })));
      label.append(radio, document.createTextNode(submode === "frequency" ? " pitch & timbre" : " loudness"));
      wrap.appendChild(label);
    }
    return wrap;
  }

  function selectorBlock(mode: Exclude<Mode, "home">): HTMLElement {
    const { regions, categories, years } = selectorOptions(state);
    const s = state.selection;
    const block = document.createElement("div");
    block.className = "selectors";
    if (mode === "sequential" || mode === "compare-years" || mode === "compare-categories") {
      block.appendChild(select("sel-region", "State", regions, s.region, "region"));
    }
    if (mode === "sequential" || mode === "compare-years" || mode === "compare-regions") {
      block.appendChild(select("sel-category", "Crime category", categories, s.category, "category"));
    }
    if (mode === "compare-regions" || mode === "compare-categories") {
      block.appendChild(select("sel-year", "Year", years, s.year, "year"));
    }
    if (mode === "sequential") {
      block.appendChild(submodeRadios());
    } else {
      const freeOptions =
        mode === "compare-years" ? years : mode === "compare-regions" ? regions : categories;
      const freeLabel =
        mode === "compare-years" ? "Year" : mode === "compare-regions" ? "State" : "Crime category";
      block.appendChild(select("sel-compare-a", `First ${freeLabel}`, freeOptions, s.compareA, "compareA"));
      block.appendChild(select("sel-compare-b", `Second ${freeLabel}`, freeOptions, s.compareB, "compareB"));
    }
    return block;
  }

  function modePanel(mode: Exclude<Mode, "home">): HTMLElement {
    const panel = document.createElement("section");
    panel.className = `panel mode-${mode}`;

    const back = document.createElement("button");
    back.className = "back";
    back.textContent = "← Back";
    back.addEventListener("click", () => setState(enterMode(state, "home")));
    panel.appendChild(back);

    const heading = document.createElement("h2");
    heading.textContent = PANEL_TITLES[mode];
    panel.appendChild(heading);

    panel.appendChild(selectorBlock(mode));

    const play = document.createElement("button");
    play.className = "play";
    play.textContent = "▶ Play";
    play.disabled = validateSelection(state) !== null;
    play.addEventListener("click", () => void attemptPlay());
    panel.appendChild(play);

    const error = document.createElement("p");
    error.className = "inline-error";
    error.textContent = state.inlineError ?? "";
    error.hidden = !state.inlineError;
    panel.appendChild(error);

    const chart = document.createElement("div");
    chart.className = "chart";
    panel.appendChild(chart);

    const verdict = document.createElement("p");
    verdict.className = "verdict-line";
    verdict.hidden = true;
    panel.appendChild(verdict);

    return panel;
  }

  function render(): void {
    root.textContent = "";
    const header = document.createElement("header");
    const title = document.createElement("h1");
    title.textContent = "Hear the data: crimes against women in India, 2001-2012";
    header.appendChild(title);
    root.appendChild(header);
    const alert = banner();
    if (alert) root.appendChild(alert);
    root.appendChild(state.mode === "home" ? homePanel() : modePanel(state.mode));
  }

  async function loadMeta(): Promise<void> {
    try {
      const meta = await deps.api.fetchMeta();
      setState(withMeta(state, meta));
    } catch (err) {
      setState(withMetaError(state, err instanceof Error ? err.message : String(err)));
    }
  }

  function showChart(svg: string): void {
    const chart = root.querySelector<HTMLElement>(".chart");
    if (chart) chart.innerHTML = svg;
  }

  function showVerdict(text: string): void {
    const line = root.querySelector<HTMLElement>(".verdict-line");
    if (line) {
      line.textContent = text;
      line.hidden = false;
    }
  }

  function showInlineError(message: string): void {
    state = { ...state, inlineError: message };
    const line = root.querySelector<HTMLElement>(".inline-error");
    if (line) {
      line.textContent = message;
      line.hidden = false;
    }
  }

  async function attemptPlay(): Promise<void> {
    const blocker = validateSelection(state);
    if (blocker !== null) {
      showInlineError(blocker);
      return;
    }
    const request = requestFor(state);
    try {
      if (request.kind === "sequential") {
        const response = await deps.api.sonifySequential(request.body);
        showChart(lineChartSvg(response.graph));
        deps.player.play(response.audio_url);
      } else {
        const response = await deps.api.sonifyComparative(request.body);
        const [labelA, labelB] = request.body.compare.map(String) as [string, string];
        showChart(barChartSvg([labelA, labelB], response.values, response.louder));
        const verdict = louderLabel(response.louder, labelA, labelB);
        showVerdict(verdict === "equal" ? "equal" : `louder: ${verdict}`);
        deps.player.play(response.audio_url);
      }
      state = { ...state, playing: true, inlineError: null };
    } catch (err) {
      // 400s point at the offending selection; show them inline, play nothing.
      const message = err instanceof ApiError ? err.detail : String(err);
      showInlineError(message);
    }
  }

  render();
  return { loadMeta, attemptPlay, getState: () => state, root };
}
