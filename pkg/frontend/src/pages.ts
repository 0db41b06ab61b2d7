/** The eight dashboard pages: which widgets each shows, which API calls it
 * issues for an applied filter set, and how fetched data renders.
 *
 * Charts always reflect the APPLIED filter set; the draft only becomes
 * visible after "Fetch Data/Apply Filters".
 */

import type { AggregateParams } from "./api.js";
import { emptyDraft, type FilterDraft, toRequestBody } from "./filterbody.js";
import {
  entityGridColumns,
  paperGridColumns,
  renderGrid,
  type SortSpec,
} from "./grid.js";
import { renderBarChart, renderBoxplot, renderTreemap } from "./render.js";
import { renderTopicView } from "./topicview.js";
import type {
  Dimension,
  DistributionSummary,
  FilterSetBody,
  GridRow,
  Metric,
  PaperRow,
  TopicPayload,
  TopKEntry,
  YearSeries,
} from "./types.js";

export const DASHBOARD_PAGES = [
  "Papers",
  "Authors",
  "Venues",
  "TypesOfPaper",
  "FieldsOfStudy",
  "Publishers",
  "Citations",
  "LDATopics",
] as const;

export type DashboardPage = (typeof DASHBOARD_PAGES)[number];

export const AGGREGATION_PAGES: DashboardPage[] = [
  "Authors",
  "Venues",
  "TypesOfPaper",
  "FieldsOfStudy",
  "Publishers",
];

export function dimensionFor(page: DashboardPage): Dimension {
  switch (page) {
    case "Papers":
    case "Citations":
    case "LDATopics":
      return "paper";
    case "Authors":
      return "author";
    case "Venues":
      return "venue";
    case "TypesOfPaper":
      return "type_of_paper";
    case "FieldsOfStudy":
      return "field_of_study";
    case "Publishers":
      return "publisher";
  }
}

/** The metric switch appears only on the five aggregation dashboards. */
export function hasMetricSwitch(page: DashboardPage): boolean {
  return AGGREGATION_PAGES.includes(page);
}

export interface ViewState {
  page: DashboardPage;
  draft: FilterDraft;
  applied: FilterSetBody;
  metric: Metric;
  k: number;
  lambda: number;
  selectedTopic: number | null;
  sort: SortSpec | null;
}

export function initialState(): ViewState {
  return {
    page: "Papers",
    draft: emptyDraft(),
    applied: {},
    metric: "citations",
    k: 10,
    lambda: 0.6,
    selectedTopic: null,
    sort: null,
  };
}

export function applyFilters(state: ViewState): ViewState {
  return { ...state, applied: toRequestBody(state.draft) };
}

export function clearFilters(state: ViewState): ViewState {
  return { ...state, draft: emptyDraft(), applied: {} };
}

export interface WidgetRequest {
  widget: string;
  operation: string;
  params: AggregateParams;
}

/** Every API call a page issues for the applied filter set. */
export function pageRequests(state: ViewState): WidgetRequest[] {
  const filters = state.applied;
  const dimension = dimensionFor(state.page);
  if (state.page === "Citations") {
    return [
      { widget: "c1-in", operation: "per_year",
        params: { dimension: "paper", metric: "citations", direction: "in", filters } },
      { widget: "c3-in", operation: "distribution",
        params: { dimension: "paper", direction: "in", filters } },
      { widget: "c1-out", operation: "per_year",
        params: { dimension: "paper", metric: "citations", direction: "out", filters } },
      { widget: "c3-out", operation: "distribution",
        params: { dimension: "paper", direction: "out", filters } },
    ];
  }
  if (state.page === "LDATopics") {
    return []; // the topic job flow is asynchronous, not a plain aggregate call
  }
  const metric: Metric = hasMetricSwitch(state.page) ? state.metric : "citations";
  const requests: WidgetRequest[] = [
    { widget: "c1", operation: "per_year", params: { dimension, filters } },
  ];
  if (state.page === "Papers") {
    requests.push(
      { widget: "c2", operation: "grid",
        params: { dimension: "paper", filters, limit: 100 } },
      { widget: "c3", operation: "distribution",
        params: { dimension: "paper", direction: "in", filters } },
      { widget: "c4", operation: "top_k",
        params: { dimension: "paper", metric: "citations", k: state.k, filters } },
    );
    return requests;
  }
  // co-occurrence mode: filtering the Authors page by one author shows
  // co-authors; same for a single field of study on its page
  const coValue = coOccurrenceValue(state);
  if (coValue !== null) {
    requests.push({
      widget: "c2",
      operation: "co_occurrence",
      params: { dimension, selected_value: coValue, filters },
    });
  } else {
    requests.push({ widget: "c2", operation: "grid", params: { dimension, filters } });
  }
  requests.push(
    { widget: "c3", operation: "distribution", params: { dimension, metric, filters } },
    { widget: "c4", operation: "top_k", params: { dimension, metric, k: state.k, filters } },
  );
  return requests;
}

export function coOccurrenceValue(state: ViewState): string | null {
  if (state.page === "Authors" && state.applied.authors?.length === 1) {
    return state.applied.authors[0] ?? null;
  }
  if (state.page === "FieldsOfStudy" && state.applied.fields_of_study?.length === 1) {
    return state.applied.fields_of_study[0] ?? null;
  }
  return null;
}

export interface PageData {
  [widget: string]: unknown;
}

function singular(page: DashboardPage): string {
  switch (page) {
    case "Papers":
      return "papers";
    case "Authors":
      return "authors";
    case "Venues":
      return "venues";
    case "TypesOfPaper":
      return "types of paper";
    case "FieldsOfStudy":
      return "fields of study";
    case "Publishers":
      return "publishers";
    default:
      return "entries";
  }
}

/** Assemble a page's widget markup from fetched data. Missing keys render
 * as loading slots so the shell can mount before data lands. */
export function renderPage(state: ViewState, data: PageData): string {
  const page = state.page;
  const parts: string[] = [];
  const loading = `<div class="loading" aria-busy="true">loading…</div>`;
  const slot = (widget: string, html: (value: never) => string): string => {
    const value = data[widget];
    return value === undefined
      ? `<div class="slot" data-widget="${widget}">${loading}</div>`
      : `<div class="slot" data-widget="${widget}">${html(value as never)}</div>`;
  };

  if (page === "Citations") {
    parts.push(
      slot("c1-in", (v: YearSeries) => renderBarChart(v, "Incoming citations per year")),
      slot("c3-in", (v: DistributionSummary) =>
        renderBoxplot(v, "Incoming citations distribution")),
      slot("c1-out", (v: YearSeries) => renderBarChart(v, "Outgoing citations per year")),
      slot("c3-out", (v: DistributionSummary) =>
        renderBoxplot(v, "Outgoing citations distribution")),
    );
    return wrapPage(page, parts.join(""));
  }

  if (page === "LDATopics") {
    const payload = data["c5"] as TopicPayload | undefined;
    parts.push(
      payload === undefined
        ? `<div class="slot" data-widget="c5">${loading}</div>`
        : `<div class="slot" data-widget="c5">${renderTopicView(
            payload,
            state.selectedTopic,
            state.lambda,
          )}</div>`,
    );
    return wrapPage(page, parts.join(""));
  }

  parts.push(
    slot("c1", (v: YearSeries) => renderBarChart(v, `#${singular(page)} per year`)),
  );
  if (page === "Papers") {
    parts.push(
      slot("c2", (rows: PaperRow[]) =>
        renderGrid(
          rows as unknown as Record<string, unknown>[],
          paperGridColumns(),
          state.sort,
          "Paper details",
        )),
    );
  } else if (coOccurrenceValue(state) !== null) {
    parts.push(
      slot("c2", (counts: Record<string, number>) => {
        const rows = Object.entries(counts)
          .sort((a, b) => b[1] - a[1] || (a[0] < b[0] ? -1 : 1))
          .map(([name, shared]) => ({ name, shared_publications: shared }));
        return renderGrid(
          rows,
          ["name", "shared_publications"],
          null,
          `Co-occurring ${singular(page)}`,
        );
      }),
    );
  } else {
    parts.push(
      slot("c2", (rows: GridRow[]) =>
        renderGrid(
          rows as unknown as Record<string, unknown>[],
          entityGridColumns(),
          state.sort,
          `${singular(page)} details`,
          { dblpLinks: page === "Authors" || page === "Venues" },
        )),
    );
  }
  const metricLabel = hasMetricSwitch(page) ? state.metric : "citations";
  parts.push(
    slot("c3", (v: DistributionSummary) =>
      renderBoxplot(v, `#${metricLabel} distribution by ${singular(page)}`)),
    slot("c4", (v: TopKEntry[]) =>
      renderTreemap(v, `Top ${state.k} ${singular(page)} by #${metricLabel}`)),
  );
  return wrapPage(page, parts.join(""));
}

function wrapPage(page: DashboardPage, inner: string): string {
  return `<main class="page" data-page="${page}">${inner}</main>`;
}

export function renderAppBar(active: DashboardPage): string {
  const tabs = DASHBOARD_PAGES.map((page) => {
    const cls = page === active ? "tab active" : "tab";
    return `<button class="${cls}" data-page="${page}" type="button">${page}</button>`;
  }).join("");
  return `<nav class="app-bar">${tabs}<span class="spacer"></span><button class="gear" type="button">⚙</button></nav>`;
}

export function renderMetricSwitch(page: DashboardPage, metric: Metric): string {
  if (!hasMetricSwitch(page)) {
    return "";
  }
  const citations = metric === "citations" ? "active" : "";
  const papers = metric === "papers" ? "active" : "";
  return (
    `<div class="metric-switch" role="group">` +
    `<button type="button" class="${citations}" data-metric="citations">#Citations</button>` +
    `<button type="button" class="${papers}" data-metric="papers">#Papers</button></div>`
  );
}
