/** C2: the entity/paper details grid — stable sorting, cell abbreviation
 * with the full value on hover, and CSV export of exactly what is shown. */

import { escapeHtml } from "./render.js";
import type { GridRow, PaperRow } from "./types.js";

export type SortDirection = "asc" | "desc";

export interface SortSpec {
  column: string;
  direction: SortDirection;
}

export const ENTITY_COLUMNS = [
  "name",
  "first_year",
  "last_year",
  "papers",
  "citations",
  "avg_citations",
] as const;

export const PAPER_COLUMNS = [
  "title",
  "year_published",
  "authors",
  "venue",
  "citations",
  "url",
] as const;

const ABBREVIATE_AT = 36;

export function abbreviate(value: string, limit: number = ABBREVIATE_AT): string {
  if (value.length <= limit) {
    return value;
  }
  return value.slice(0, limit - 1) + "…";
}

function cellValue(row: Record<string, unknown>, column: string): string | number | null {
  const value = row[column];
  if (value === null || value === undefined) {
    return null;
  }
  if (Array.isArray(value)) {
    return value.join("; ");
  }
  return value as string | number;
}

/** Stable comparison sort on one column; nulls always sink to the bottom. */
export function sortRows<T extends Record<string, unknown>>(
  rows: T[],
  sort: SortSpec | null,
): T[] {
  if (sort === null) {
    return [...rows];
  }
  const keyed = rows.map((row, index) => ({ row, index }));
  keyed.sort((a, b) => {
    const left = cellValue(a.row, sort.column);
    const right = cellValue(b.row, sort.column);
    let order: number;
    if (left === null && right === null) {
      order = 0;
    } else if (left === null) {
      order = 1; // nulls last regardless of direction
      return order;
    } else if (right === null) {
      return -1;
    } else if (typeof left === "number" && typeof right === "number") {
      order = left - right;
    } else {
      order = String(left) < String(right) ? -1 : String(left) > String(right) ? 1 : 0;
    }
    if (order === 0) {
      return a.index - b.index; // stability
    }
    return sort.direction === "asc" ? order : -order;
  });
  return keyed.map((entry) => entry.row);
}

export function nextSort(current: SortSpec | null, column: string): SortSpec {
  if (current !== null && current.column === column && current.direction === "asc") {
    return { column, direction: "desc" };
  }
  return { column, direction: "asc" };
}

export function renderGrid(
  rows: Record<string, unknown>[],
  columns: readonly string[],
  sort: SortSpec | null,
  heading: string,
  options: { dblpLinks?: boolean } = {},
): string {
  const ordered = sortRows(rows, sort);
  const header = columns
    .map((column) => {
      const marker =
        sort?.column === column ? (sort.direction === "asc" ? " ↑" : " ↓") : "";
      return `<th data-column="${escapeHtml(column)}" role="button">${escapeHtml(
        column,
      )}${escapeHtml(marker)}</th>`;
    })
    .join("");
  const linkHeader = options.dblpLinks ? "<th>link</th>" : "";
  const body = ordered
    .map((row) => {
      const cells = columns
        .map((column) => {
          const value = cellValue(row, column);
          const text = value === null ? "" : String(value);
          const shown = abbreviate(text);
          const title = shown === text ? "" : ` title="${escapeHtml(text)}"`;
          return `<td${title}>${escapeHtml(shown)}</td>`;
        })
        .join("");
      const link = options.dblpLinks
        ? `<td><a href="https://dblp.org/search?q=${encodeURIComponent(
            String(cellValue(row, "name") ?? ""),
          )}" target="_blank" rel="noopener">Link</a></td>`
        : "";
      return `<tr>${cells}${link}</tr>`;
    })
    .join("");
  return (
    `<figure class="widget grid"><figcaption>${escapeHtml(heading)}</figcaption>` +
    `<table><thead><tr>${header}${linkHeader}</tr></thead><tbody>${body}</tbody></table></figure>`
  );
}

// --- CSV export of the displayed rows ---------------------------------------

function csvField(value: string): string {
  if (/[",\r\n]/.test(value)) {
    return `"${value.replace(/"/g, '""')}"`;
  }
  return value;
}

export function gridToCsv(
  rows: Record<string, unknown>[],
  columns: readonly string[],
  sort: SortSpec | null,
): string {
  const ordered = sortRows(rows, sort);
  const lines = [columns.map(csvField).join(",")];
  for (const row of ordered) {
    lines.push(
      columns
        .map((column) => {
          const value = cellValue(row, column);
          return csvField(value === null ? "" : String(value));
        })
        .join(","),
    );
  }
  return lines.join("\r\n") + "\r\n";
}

/** Strict RFC-4180 reader used by tests and the import-back path. */
export function parseCsv(text: string): string[][] {
  const rows: string[][] = [];
  let row: string[] = [];
  let field = "";
  let quoted = false;
  let i = 0;
  while (i < text.length) {
    const ch = text[i]!;
    if (quoted) {
      if (ch === '"' && text[i + 1] === '"') {
        field += '"';
        i += 2;
        continue;
      }
      if (ch === '"') {
        quoted = false;
        i += 1;
        continue;
      }
      field += ch;
      i += 1;
      continue;
    }
    if (ch === '"') {
      quoted = true;
      i += 1;
      continue;
    }
    if (ch === ",") {
      row.push(field);
      field = "";
      i += 1;
      continue;
    }
    if (ch === "\r" && text[i + 1] === "\n") {
      row.push(field);
      rows.push(row);
      row = [];
      field = "";
      i += 2;
      continue;
    }
    if (ch === "\n") {
      row.push(field);
      rows.push(row);
      row = [];
      field = "";
      i += 1;
      continue;
    }
    field += ch;
    i += 1;
  }
  if (field.length > 0 || row.length > 0) {
    row.push(field);
    rows.push(row);
  }
  return rows;
}

export function entityGridColumns(): readonly string[] {
  return ENTITY_COLUMNS;
}

export function paperGridColumns(): readonly string[] {
  return PAPER_COLUMNS;
}

export type { GridRow, PaperRow };
