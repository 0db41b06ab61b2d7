/** Filter sidebar state and its translation to API request bodies.
 *
 * Values chipped onto the same textual filter combine with OR; different
 * filters combine with AND; numeric min/max pairs are inclusive. The draft
 * is what the sidebar edits; charts only ever see the applied copy.
 */

import type { FilterSetBody, NumericSlot, TextualSlot } from "./types.js";
import { TEXTUAL_SLOTS } from "./types.js";

export interface NumericDraft {
  min: number | null;
  max: number | null;
}

export interface FilterDraft {
  authors: string[];
  venues: string[];
  publishers: string[];
  types_of_paper: string[];
  fields_of_study: string[];
  access_types: string[];
  year_range: NumericDraft;
  citation_range: NumericDraft;
}

export function emptyDraft(): FilterDraft {
  return {
    authors: [],
    venues: [],
    publishers: [],
    types_of_paper: [],
    fields_of_study: [],
    access_types: [],
    year_range: { min: null, max: null },
    citation_range: { min: null, max: null },
  };
}

export function addChip(draft: FilterDraft, slot: TextualSlot, value: string): FilterDraft {
  const trimmed = value.trim();
  const existing = draft[slot];
  if (!trimmed || existing.some((v) => v.toLowerCase() === trimmed.toLowerCase())) {
    return draft;
  }
  return { ...draft, [slot]: [...existing, trimmed] };
}

export function removeChip(draft: FilterDraft, slot: TextualSlot, value: string): FilterDraft {
  return { ...draft, [slot]: draft[slot].filter((v) => v !== value) };
}

export function setRange(
  draft: FilterDraft,
  slot: NumericSlot,
  min: number | null,
  max: number | null,
): FilterDraft {
  return { ...draft, [slot]: { min, max } };
}

/** Inline message blocking Apply, or null when the draft is applicable. */
export function draftProblem(draft: FilterDraft): string | null {
  for (const slot of ["year_range", "citation_range"] as NumericSlot[]) {
    const { min, max } = draft[slot];
    if (min !== null && max !== null && min > max) {
      return `${slot.replace("_", " ")}: min ${min} exceeds max ${max}`;
    }
  }
  return null;
}

/** The JSON body the API expects; inactive filters are absent keys. */
export function toRequestBody(draft: FilterDraft): FilterSetBody {
  const body: FilterSetBody = {};
  for (const slot of TEXTUAL_SLOTS) {
    if (draft[slot].length > 0) {
      body[slot] = [...draft[slot]];
    }
  }
  for (const slot of ["year_range", "citation_range"] as NumericSlot[]) {
    const { min, max } = draft[slot];
    if (min !== null || max !== null) {
      // an open end falls back to the wide defaults the backend accepts
      const low = min ?? (slot === "year_range" ? 1936 : 0);
      const high = max ?? (slot === "year_range" ? 2100 : 1_000_000_000);
      body[slot] = [low, high];
    }
  }
  return body;
}
