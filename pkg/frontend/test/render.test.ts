import { describe, expect, it } from "vitest";

import {
  applyFilters,
  clearFilters,
  DASHBOARD_PAGES,
  dimensionFor,
  hasMetricSwitch,
  initialState,
  pageRequests,
  renderAppBar,
  renderPage,
  type ViewState,
} from "../src/pages.js";
import { logPosition, renderBarChart, renderBoxplot, renderTreemap, treemapLayout } from "../src/render.js";
import { addChip, emptyDraft, setRange } from "../src/filterbody.js";
import type { PageData, } from "../src/pages.js";
import type { DistributionSummary, TopicPayload, YearSeries } from "../src/types.js";

const SERIES: YearSeries = { years: [[2019, 4], [2021, 2]], na: 1 };
const SUMMARY: DistributionSummary = {
  min: 0, q1: 2, median: 11, q3: 51, max: 133020, avg: 35.4, n: 9,
};

const PAYLOAD: TopicPayload = {
  k: 2,
  seed: 0,
  vocabulary_size: 4,
  top_salient_terms: [
    { term: "cat", score: 9 },
    { term: "dog", score: 8 },
  ],
  topics: [
    {
      topic: 0,
      prevalence: 0.6,
      relevance: {
        "0.0": [{ term: "meow", score: 2 }, { term: "cat", score: 1 }],
        "0.5": [{ term: "cat", score: 2 }, { term: "meow", score: 1 }],
        "1.0": [{ term: "cat", score: 3 }, { term: "dog", score: 0.1 }],
      },
    },
    {
      topic: 1,
      prevalence: 0.4,
      relevance: { "0.0": [], "0.5": [], "1.0": [] },
    },
  ],
  coordinates: [
    { topic: 0, x: -0.1, y: 0.0, size: 0.6 },
    { topic: 1, x: 0.1, y: 0.0, size: 0.4 },
  ],
};

function stateFor(page: ViewState["page"]): ViewState {
  return { ...initialState(), page };
}

function dataFor(page: ViewState["page"]): PageData {
  if (page === "Citations") {
    return { "c1-in": SERIES, "c3-in": SUMMARY, "c1-out": SERIES, "c3-out": SUMMARY };
  }
  if (page === "LDATopics") {
    return { c5: PAYLOAD };
  }
  if (page === "Papers") {
    return {
      c1: SERIES,
      c2: [
        { id: "p1", title: "T", year_published: 2020, authors: ["A"], venue: "ACL",
          citations: 4, url: null },
      ],
      c3: SUMMARY,
      c4: [["T", 4]],
    };
  }
  return {
    c1: SERIES,
    c2: [
      { name: "ACL", first_year: 2019, last_year: 2021, papers: 3, citations: 6,
        avg_citations: 2 },
    ],
    c3: SUMMARY,
    c4: [["ACL", 6]],
  };
}

describe("the eight dashboard pages", () => {
  it("declares exactly eight pages", () => {
    expect(DASHBOARD_PAGES).toHaveLength(8);
    expect(new Set(DASHBOARD_PAGES).size).toBe(8);
  });

  for (const page of DASHBOARD_PAGES) {
    it(`renders ${page}`, () => {
      const html = renderPage(stateFor(page), dataFor(page));
      expect(html).toContain(`data-page="${page}"`);
      if (page === "Citations") {
        // one bar chart and one boxplot each for incoming and outgoing
        expect(html.match(/bar-chart/g)).toHaveLength(2);
        expect(html.match(/class="widget boxplot"/g)).toHaveLength(2);
        expect(html).toContain("Incoming citations per year");
        expect(html).toContain("Outgoing citations per year");
      } else if (page === "LDATopics") {
        expect(html).toContain("topic-view");
        expect(html).toContain("Intertopic distance map");
        expect(html).toContain("relevance λ");
      } else {
        expect(html).toContain("bar-chart");
        expect(html).toContain('class="widget grid"');
        expect(html).toContain('class="widget boxplot"');
        expect(html).toContain('class="widget treemap"');
      }
    });
  }

  it("shows loading slots until data arrives", () => {
    const html = renderPage(stateFor("Venues"), {});
    expect(html).toContain("loading…");
    expect(html).toContain('data-widget="c4"');
  });

  it("puts the metric switch only on the five aggregation dashboards", () => {
    expect(DASHBOARD_PAGES.filter(hasMetricSwitch)).toEqual([
      "Authors",
      "Venues",
      "TypesOfPaper",
      "FieldsOfStudy",
      "Publishers",
    ]);
  });

  it("renders dblp links on the Authors and Venues grids only", () => {
    expect(renderPage(stateFor("Venues"), dataFor("Venues"))).toContain("dblp.org/search");
    expect(renderPage(stateFor("Publishers"), dataFor("Publishers"))).not.toContain(
      "dblp.org",
    );
  });

  it("marks the active tab in the app bar", () => {
    const html = renderAppBar("Citations");
    expect(html).toContain('class="tab active" data-page="Citations"');
    expect(html.match(/class="tab/g)).toHaveLength(8);
  });
});

describe("page requests", () => {
  it("issues C1-C4 calls with the page dimension on aggregation pages", () => {
    const state = stateFor("Venues");
    const requests = pageRequests(state);
    expect(requests.map((r) => [r.widget, r.operation])).toEqual([
      ["c1", "per_year"],
      ["c2", "grid"],
      ["c3", "distribution"],
      ["c4", "top_k"],
    ]);
    for (const request of requests) {
      expect(request.params.dimension).toBe("venue");
    }
  });

  it("passes the applied filters, never the draft, to every call", () => {
    let state = stateFor("Venues");
    state = { ...state, draft: addChip(state.draft, "venues", "ACL") };
    for (const request of pageRequests(state)) {
      expect(request.params.filters).toEqual({}); // draft not applied yet
    }
    state = applyFilters(state);
    for (const request of pageRequests(state)) {
      expect(request.params.filters).toEqual({ venues: ["ACL"] });
    }
    state = clearFilters(state);
    for (const request of pageRequests(state)) {
      expect(request.params.filters).toEqual({});
    }
  });

  it("switches the grid to co-occurrence when one author is filtered", () => {
    let state = stateFor("Authors");
    state = { ...state, draft: addChip(state.draft, "authors", "Ada Lovelace") };
    state = applyFilters(state);
    const grid = pageRequests(state).find((r) => r.widget === "c2")!;
    expect(grid.operation).toBe("co_occurrence");
    expect(grid.params.selected_value).toBe("Ada Lovelace");
  });

  it("requests in and out series on the Citations page", () => {
    const requests = pageRequests(stateFor("Citations"));
    expect(requests.map((r) => r.params.direction)).toEqual(["in", "in", "out", "out"]);
  });

  it("the treemap follows the metric switch and k", () => {
    let state = stateFor("Venues");
    state = { ...state, metric: "papers", k: 5 };
    const treemap = pageRequests(state).find((r) => r.widget === "c4")!;
    expect(treemap.params.metric).toBe("papers");
    expect(treemap.params.k).toBe(5);
  });

  it("the Papers page always uses the citations metric", () => {
    let state = stateFor("Papers");
    state = { ...state, metric: "papers" };
    const treemap = pageRequests(state).find((r) => r.widget === "c4")!;
    expect(treemap.params.metric).toBe("citations");
  });

  it("maps every page to its dimension", () => {
    expect(dimensionFor("Papers")).toBe("paper");
    expect(dimensionFor("TypesOfPaper")).toBe("type_of_paper");
    expect(dimensionFor("FieldsOfStudy")).toBe("field_of_study");
  });
});

describe("bar chart", () => {
  it("shows exact values on hover and an NA bucket on the left", () => {
    const html = renderBarChart(SERIES, "#papers per year");
    expect(html).toContain("<title>NA: 1</title>");
    expect(html).toContain("<title>2019: 4</title>");
    expect(html.indexOf("NA")).toBeLessThan(html.indexOf("2019"));
  });

  it("greys out zero-count year labels instead of dropping them", () => {
    const html = renderBarChart(SERIES, "x");
    // 2020 sits between 2019 and 2021 with no entries
    expect(html).toContain("<title>2020: 0</title>");
    expect(html).toMatch(/class="year-label greyed"[^>]*>2020</);
    expect(html).toMatch(/class="year-label"[^>]*>2019</);
  });

  it("renders an empty axis for an all-zero result", () => {
    const html = renderBarChart({ years: [[2019, 0], [2020, 0]], na: 0 }, "x");
    expect(html.match(/greyed/g)).toHaveLength(2);
  });
});

describe("boxplot", () => {
  it("is log-scaled for display while the tooltip stays linear", () => {
    const html = renderBoxplot(SUMMARY, "#citations distribution");
    expect(html).toContain('class="log-scaled"');
    expect(html).toContain("median 11");
    expect(html).toContain("max 133020");
    expect(html).toContain('data-linear="true"');
    // log positions compress the huge max: median lands left of halfway
    const span = 320;
    expect(logPosition(11, 133020, span)).toBeLessThan(span / 2);
    expect(logPosition(133020, 133020, span)).toBeCloseTo(span);
    expect(logPosition(0, 133020, span)).toBe(0); // zeros stay renderable
  });
});

describe("treemap", () => {
  it("areas are proportional to values and labels collapse when tiny", () => {
    const entries: [string, number][] = [
      ["Big Venue", 960],
      ["Small Venue", 30],
      ["Tiny Venue", 10],
    ];
    const boxes = treemapLayout(entries);
    const total = boxes.reduce((s, b) => s + b.width * b.height, 0);
    const big = boxes.find((b) => b.name === "Big Venue")!;
    expect((big.width * big.height) / total).toBeCloseTo(0.96, 2);
    expect(big.labelled).toBe(true);
    const tiny = boxes.find((b) => b.name === "Tiny Venue")!;
    expect(tiny.labelled).toBe(false);
    const html = renderTreemap(entries, "Top 3");
    expect(html).toContain("<title>Big Venue: 960</title>");
    expect(html).toContain("<title>Tiny Venue: 10</title>"); // hover keeps full value
    expect(html).not.toMatch(/<text[^>]*>Tiny Venue</);
  });
});
