/** Browser bootstrap: binds ViewState to the DOM and runs the fetch loops.
 *
 * Everything visual comes from the pure render modules; this file only
 * mounts strings, wires events, and talks to the API client. The dashboard
 * keeps no data of its own beyond ViewState and the auth token.
 */

import { ApiClient, ApiRequestError, RequestGate } from "./api.js";
import { debounce, SUGGESTION_DEBOUNCE_MS } from "./debounce.js";
import { addChip, draftProblem, removeChip, setRange } from "./filterbody.js";
import { gridToCsv, nextSort, entityGridColumns, paperGridColumns } from "./grid.js";
import {
  applyFilters,
  clearFilters,
  initialState,
  pageRequests,
  renderAppBar,
  renderMetricSwitch,
  renderPage,
  type DashboardPage,
  type PageData,
  type ViewState,
} from "./pages.js";
import { renderNotice } from "./render.js";
import { exportStandaloneHtml } from "./topicview.js";
import type { NumericSlot, TextualSlot, TopicPayload } from "./types.js";
import { TEXTUAL_SLOTS } from "./types.js";

const API_URL =
  (window as { PUBATLAS_API_URL?: string }).PUBATLAS_API_URL ??
  localStorage.getItem("pubatlas_api_url") ??
  "http://127.0.0.1:8000";

const client = new ApiClient(API_URL);
let state: ViewState = initialState();
let pageData: PageData = {};
const gates = new Map<string, RequestGate>();

const root = document.getElementById("app")!;

function notify(message: string): void {
  const holder = document.getElementById("notices")!;
  holder.insertAdjacentHTML("beforeend", renderNotice(message));
  holder.querySelectorAll(".dismiss").forEach((btn) => {
    (btn as HTMLButtonElement).onclick = () => btn.parentElement?.remove();
  });
}

function gate(widget: string): RequestGate {
  let g = gates.get(widget);
  if (g === undefined) {
    g = new RequestGate();
    gates.set(widget, g);
  }
  return g;
}

async function refreshWidgets(): Promise<void> {
  pageData = {};
  mount();
  const requests = pageRequests(state);
  await Promise.all(
    requests.map(async ({ widget, operation, params }) => {
      try {
        const result = await gate(widget).run(() =>
          client.aggregate<unknown>(operation, params),
        );
        if (result !== undefined) {
          pageData[widget] = result;
          mount();
        }
      } catch (error) {
        notify(describe(error));
      }
    }),
  );
  if (state.page === "LDATopics") {
    void runTopicJob();
  }
}

async function runTopicJob(): Promise<void> {
  try {
    const jobId = await client.submitTopicJob(state.applied, 10, 0);
    const poll = async (): Promise<void> => {
      const status = await client.pollTopicJob(jobId);
      if (status.status === "done" && status.result) {
        pageData["c5"] = status.result;
        mount();
      } else if (status.status === "failed") {
        notify(`topic job failed: ${status.error ?? "unknown error"}`);
      } else {
        setTimeout(() => void poll(), 500);
      }
    };
    await poll();
  } catch (error) {
    notify(describe(error));
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiRequestError) {
    return `${error.body.code}: ${error.body.message}`;
  }
  return String(error);
}

function sidebarHtml(): string {
  const problem = draftProblem(state.draft);
  const chipBoxes = TEXTUAL_SLOTS.map((slot) => {
    const chips = state.draft[slot]
      .map(
        (value) =>
          `<span class="chip" data-slot="${slot}" data-value="${value}">${value}` +
          `<button type="button" class="remove">×</button></span>`,
      )
      .join("");
    return (
      `<div class="filter" data-slot="${slot}"><label>${slot.replace(/_/g, " ")}` +
      ` <span class="help" title="values on one filter combine with OR; filters combine with AND; matching is case-insensitive">(?)</span></label>` +
      `<input type="text" class="filter-input" data-slot="${slot}" list="dl-${slot}"/>` +
      `<datalist id="dl-${slot}"></datalist><div class="chips">${chips}</div></div>`
    );
  }).join("");
  const ranges = (["year_range", "citation_range"] as NumericSlot[])
    .map((slot) => {
      const { min, max } = state.draft[slot];
      return (
        `<div class="filter numeric" data-slot="${slot}"><label>${slot.replace(/_/g, " ")}</label>` +
        `<input type="number" class="range-min" data-slot="${slot}" value="${min ?? ""}" placeholder="min"/>` +
        `<input type="number" class="range-max" data-slot="${slot}" value="${max ?? ""}" placeholder="max"/></div>`
      );
    })
    .join("");
  return (
    `<aside class="sidebar"><div class="sidebar-head"><h2>Filters</h2>` +
    `<button id="clear-filters" type="button">Clear Filters</button></div>` +
    chipBoxes +
    ranges +
    (problem ? `<p class="problem">${problem}</p>` : "") +
    `<button id="apply-filters" type="button" ${problem ? "disabled" : ""}>Fetch Data/Apply Filters</button>` +
    `</aside>`
  );
}

function toolbarHtml(): string {
  const metric = renderMetricSwitch(state.page, state.metric);
  const k =
    state.page === "LDATopics" || state.page === "Citations"
      ? ""
      : `<label class="k">top k <input id="k-input" type="number" min="1" value="${state.k}"/></label>`;
  const exports =
    state.page === "LDATopics"
      ? `<button id="export-html" type="button">Export</button>`
      : `<button id="export-csv" type="button">Export CSV</button>` +
        `<button id="export-svg" type="button">Export SVG</button>` +
        `<button id="export-png" type="button">Export PNG</button>`;
  return `<div class="toolbar">${metric}${k}<span class="spacer"></span>${exports}</div>`;
}

function mount(): void {
  root.innerHTML =
    renderAppBar(state.page) +
    `<div class="layout">` +
    sidebarHtml() +
    `<div class="content">` +
    toolbarHtml() +
    renderPage(state, pageData) +
    `</div></div>`;
  wire();
}

function wire(): void {
  root.querySelectorAll<HTMLButtonElement>(".app-bar .tab").forEach((tab) => {
    tab.onclick = () => {
      state = { ...state, page: tab.dataset.page as DashboardPage, sort: null };
      void refreshWidgets();
    };
  });
  root.querySelectorAll<HTMLButtonElement>(".metric-switch button").forEach((btn) => {
    btn.onclick = () => {
      state = { ...state, metric: btn.dataset.metric as "citations" | "papers" };
      void refreshWidgets();
    };
  });
  const kInput = document.getElementById("k-input") as HTMLInputElement | null;
  if (kInput) {
    kInput.onchange = () => {
      const k = parseInt(kInput.value, 10);
      if (k >= 1) {
        state = { ...state, k };
        void refreshWidgets(); // the treemap reloads automatically on k edits
      }
    };
  }
  const apply = document.getElementById("apply-filters") as HTMLButtonElement | null;
  if (apply) {
    apply.onclick = () => {
      state = applyFilters(state);
      void refreshWidgets();
    };
  }
  const clear = document.getElementById("clear-filters") as HTMLButtonElement | null;
  if (clear) {
    clear.onclick = () => {
      state = clearFilters(state);
      void refreshWidgets();
    };
  }
  root.querySelectorAll<HTMLInputElement>(".filter-input").forEach((input) => {
    const slot = input.dataset.slot as TextualSlot;
    const fill = debounce(async (pattern: string) => {
      try {
        const values = await client.suggest(slot, pattern, 10);
        const datalist = document.getElementById(`dl-${slot}`);
        if (datalist) {
          datalist.innerHTML = values
            .map((v) => `<option value="${v}"></option>`)
            .join("");
        }
      } catch (error) {
        notify(describe(error));
      }
    }, SUGGESTION_DEBOUNCE_MS);
    input.oninput = () => fill(input.value);
    input.onchange = () => {
      if (input.value.trim()) {
        state = { ...state, draft: addChip(state.draft, slot, input.value) };
        mount();
      }
    };
  });
  root.querySelectorAll<HTMLButtonElement>(".chip .remove").forEach((btn) => {
    btn.onclick = () => {
      const chip = btn.parentElement!;
      const slot = chip.dataset.slot as TextualSlot;
      state = {
        ...state,
        draft: removeChip(state.draft, slot, chip.dataset.value ?? ""),
      };
      mount();
    };
  });
  root.querySelectorAll<HTMLInputElement>(".range-min, .range-max").forEach((input) => {
    input.onchange = () => {
      const slot = input.dataset.slot as NumericSlot;
      const min = (root.querySelector(`.range-min[data-slot="${slot}"]`) as HTMLInputElement).value;
      const max = (root.querySelector(`.range-max[data-slot="${slot}"]`) as HTMLInputElement).value;
      state = {
        ...state,
        draft: setRange(
          state.draft,
          slot,
          min === "" ? null : parseInt(min, 10),
          max === "" ? null : parseInt(max, 10),
        ),
      };
      mount();
    };
  });
  root.querySelectorAll<HTMLTableCellElement>(".grid th[data-column]").forEach((th) => {
    th.onclick = () => {
      state = { ...state, sort: nextSort(state.sort, th.dataset.column!) };
      mount();
    };
  });
  root.querySelectorAll<SVGElement>(".intertopic .topic").forEach((node) => {
    (node as unknown as HTMLElement).onclick = () => {
      const topic = parseInt(node.getAttribute("data-topic") ?? "0", 10);
      state = {
        ...state,
        selectedTopic: state.selectedTopic === topic ? null : topic,
      };
      mount();
    };
  });
  const lambda = root.querySelector<HTMLInputElement>(".lambda input");
  if (lambda) {
    lambda.oninput = () => {
      state = { ...state, lambda: parseFloat(lambda.value) };
      mount();
    };
  }
  wireExports();
}

function wireExports(): void {
  const csvBtn = document.getElementById("export-csv") as HTMLButtonElement | null;
  if (csvBtn) {
    csvBtn.onclick = () => {
      const rows = (pageData["c2"] ?? []) as Record<string, unknown>[];
      const columns =
        state.page === "Papers" ? paperGridColumns() : entityGridColumns();
      download(`${state.page}.csv`, gridToCsv(rows, columns, state.sort), "text/csv");
    };
  }
  const svgBtn = document.getElementById("export-svg") as HTMLButtonElement | null;
  if (svgBtn) {
    svgBtn.onclick = () => {
      const svg = root.querySelector(".page svg");
      if (svg) {
        download(`${state.page}.svg`, svg.outerHTML, "image/svg+xml");
      }
    };
  }
  const pngBtn = document.getElementById("export-png") as HTMLButtonElement | null;
  if (pngBtn) {
    pngBtn.onclick = () => {
      const svg = root.querySelector(".page svg");
      if (!svg) {
        return;
      }
      const blob = new Blob([svg.outerHTML], { type: "image/svg+xml" });
      const url = URL.createObjectURL(blob);
      const image = new Image();
      image.onload = () => {
        const canvas = document.createElement("canvas");
        canvas.width = image.width || 800;
        canvas.height = image.height || 400;
        canvas.getContext("2d")!.drawImage(image, 0, 0);
        canvas.toBlob((png) => {
          if (png) {
            downloadBlob(`${state.page}.png`, png);
          }
          URL.revokeObjectURL(url);
        });
      };
      image.src = url;
    };
  }
  const htmlBtn = document.getElementById("export-html") as HTMLButtonElement | null;
  if (htmlBtn) {
    htmlBtn.onclick = () => {
      const payload = pageData["c5"] as TopicPayload | undefined;
      if (payload) {
        download("topics.html", exportStandaloneHtml(payload), "text/html");
      }
    };
  }
}

function download(name: string, content: string, type: string): void {
  downloadBlob(name, new Blob([content], { type }));
}

function downloadBlob(name: string, blob: Blob): void {
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = name;
  anchor.click();
  URL.revokeObjectURL(url);
}

// --- login shell -------------------------------------------------------------

function mountLogin(): void {
  root.innerHTML = `
    <div class="login">
      <h1>Sign in</h1>
      <form id="login-form">
        <input id="login-user" placeholder="username" autocomplete="username"/>
        <input id="login-pass" type="password" placeholder="password" autocomplete="current-password"/>
        <button type="submit">Log in</button>
        <button id="register" type="button">Register</button>
      </form>
    </div>`;
  const form = document.getElementById("login-form") as HTMLFormElement;
  const user = () => (document.getElementById("login-user") as HTMLInputElement).value;
  const pass = () => (document.getElementById("login-pass") as HTMLInputElement).value;
  form.onsubmit = async (event) => {
    event.preventDefault();
    try {
      await client.login(user(), pass());
      void refreshWidgets();
    } catch (error) {
      notify(describe(error));
    }
  };
  (document.getElementById("register") as HTMLButtonElement).onclick = async () => {
    try {
      await client.register(user(), pass());
      await client.login(user(), pass());
      void refreshWidgets();
    } catch (error) {
      notify(describe(error));
    }
  };
}

mountLogin();
