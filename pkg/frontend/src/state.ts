// UI state and pure selection logic. No fetch, no DOM: everything here is
// unit-testable and the panels stay thin.

import type { ComparativeRequest, Meta, SequentialRequest } from "./api.js";

export type Mode =
  | "home"
  | "sequential"
  | "compare-years"
  | "compare-regions"
  | "compare-categories";

export const SONIFICATION_OPTIONS: { mode: Mode; title: string; blurb: string }[] = [
  {
    mode: "sequential",
    title: "Across the years",
    blurb: "Hear one state and crime category evolve 2001-2012, as pitch/timbre or as loudness.",
  },
  {
    mode: "compare-years",
    title: "Compare two years",
    blurb: "Fix a state and crime category, listen to two years side by side.",
  },
  {
    mode: "compare-regions",
    title: "Compare two states",
    blurb: "Fix a crime category and year, listen to two states side by side.",
  },
  {
    mode: "compare-categories",
    title: "Compare two crimes",
    blurb: "Fix a state and year, listen to two crime categories side by side.",
  },
];

export interface Selection {
  region: string;
  category: string;
  submode: "frequency" | "amplitude";
  year: string;
  compareA: string;
  compareB: string;
}

export interface UiState {
  mode: Mode;
  meta: Meta | null;
  metaError: string | null;
  selection: Selection;
  inlineError: string | null;
  playing: boolean;
}

export function initialState(): UiState {
  return {
    mode: "home",
    meta: null,
    metaError: null,
    selection: {
      region: "",
      category: "",
      submode: "frequency",
      year: "",
      compareA: "",
      compareB: "",
    },
    inlineError: null,
    playing: false,
  };
}

export function withMeta(state: UiState, meta: Meta): UiState {
  return { ...state, meta, metaError: null };
}

export function withMetaError(state: UiState, message: string): UiState {
  return { ...state, meta: null, metaError: message };
}

export function enterMode(state: UiState, mode: Mode): UiState {
  // Back/forward resets per-panel choices so stale picks never leak across panels.
  return { ...initialState(), meta: state.meta, metaError: state.metaError, mode };
}

export function updateSelection(state: UiState, patch: Partial<Selection>): UiState {
  return { ...state, selection: { ...state.selection, ...patch }, inlineError: null };
}

// Selector option lists come from /api/meta and nowhere else.
export function selectorOptions(state: UiState): {
  regions: string[];
  categories: string[];
  years: string[];
} {
  return {
    regions: state.meta ? [...state.meta.regions] : [],
    categories: state.meta ? [...state.meta.categories] : [],
    years: state.meta ? state.meta.years.map(String) : [],
  };
}

// Kind of the free (compared) variable per comparative mode.
function freeKind(mode: Mode): "year" | "region" | "category" {
  if (mode === "compare-years") return "year";
  if (mode === "compare-regions") return "region";
  return "category";
}

// Returns null when the current selection is playable, otherwise a message
// naming the selector that blocks playback.
export function validateSelection(state: UiState): string | null {
  if (!state.meta) return "metadata not loaded yet";
  const s = state.selection;
  switch (state.mode) {
    case "sequential":
      if (!s.region) return "choose a state";
      if (!s.category) return "choose a crime category";
      return null;
    case "compare-years":
      if (!s.region) return "choose a state";
      if (!s.category) return "choose a crime category";
      break;
    case "compare-regions":
      if (!s.category) return "choose a crime category";
      if (!s.year) return "choose a year";
      break;
    case "compare-categories":
      if (!s.region) return "choose a state";
      if (!s.year) return "choose a year";
      break;
    default:
      return "pick a sonification option first";
  }
  const kind = freeKind(state.mode);
  if (!s.compareA) return `choose the first ${kind}`;
  if (!s.compareB) return `choose the second ${kind}`;
  return null;
}

export type SonifyRequest =
  | { kind: "sequential"; body: SequentialRequest }
  | { kind: "comparative"; body: ComparativeRequest };

// Builds the API request for a valid selection; callers must validate first.
export function requestFor(state: UiState): SonifyRequest {
  const s = state.selection;
  if (state.mode === "sequential") {
    return {
      kind: "sequential",
      body: { region: s.region, category: s.category, mode: s.submode },
    };
  }
  if (state.mode === "compare-years") {
    return {
      kind: "comparative",
      body: {
        fixed: { region: s.region, category: s.category },
        compare: [Number(s.compareA), Number(s.compareB)],
      },
    };
  }
  if (state.mode === "compare-regions") {
    return {
      kind: "comparative",
      body: {
        fixed: { category: s.category, year: Number(s.year) },
        compare: [s.compareA, s.compareB],
      },
    };
  }
  return {
    kind: "comparative",
    body: {
      fixed: { region: s.region, year: Number(s.year) },
      compare: [s.compareA, s.compareB],
    },
  };
}

// Human-readable verdict for a comparative response.
export function louderLabel(
  louder: "a" | "b" | "equal",
  labelA: string,
  labelB: string,
): string {
  if (louder === "equal") return "equal";
  return louder === "a" ? labelA : labelB;
}
