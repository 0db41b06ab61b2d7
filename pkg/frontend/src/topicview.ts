/** C5: the topic-model view — intertopic map, salient/relevant term bars,
 * the relevance slider, and the standalone HTML export that keeps the
 * slider working offline. */

import { escapeHtml } from "./render.js";
import type { TermScore, TopicPayload } from "./types.js";

export const LAMBDA_STEPS = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0];

export function lambdaKey(lambda: number): string {
  return lambda.toFixed(1);
}

/** Term ranking for the current selection: the corpus-wide salient list
 * when no cluster is selected, otherwise that topic's relevance ranking at
 * the slider's lambda. */
export function termsForSelection(
  payload: TopicPayload,
  selectedTopic: number | null,
  lambda: number,
): TermScore[] {
  if (selectedTopic === null) {
    return payload.top_salient_terms;
  }
  const topic = payload.topics.find((t) => t.topic === selectedTopic);
  if (topic === undefined) {
    return [];
  }
  return topic.relevance[lambdaKey(lambda)] ?? [];
}

export function renderTermBars(
  terms: TermScore[],
  overallFrequency: Map<string, number>,
  heading: string,
): string {
  const peak = Math.max(1e-12, ...terms.map((t) => Math.abs(t.score)));
  const rows = terms
    .map((t) => {
      const width = Math.max(1, Math.round((Math.abs(t.score) / peak) * 200));
      const overall = overallFrequency.get(t.term);
      const overallBar =
        overall !== undefined
          ? `<div class="overall" style="width:${Math.max(
              1,
              Math.round((overall / Math.max(...overallFrequency.values(), 1)) * 200),
            )}px" title="overall frequency ${overall}"></div>`
          : "";
      return (
        `<li data-term="${escapeHtml(t.term)}">` +
        `<span class="term">${escapeHtml(t.term)}</span>` +
        `<div class="score" style="width:${width}px" title="${t.score}"></div>` +
        overallBar +
        `</li>`
      );
    })
    .join("");
  return (
    `<div class="term-bars"><h3>${escapeHtml(heading)}</h3><ol>${rows}</ol></div>`
  );
}

export function renderIntertopicMap(payload: TopicPayload, selected: number | null): string {
  const size = 300;
  const xs = payload.coordinates.map((c) => c.x);
  const ys = payload.coordinates.map((c) => c.y);
  const spanX = Math.max(1e-9, Math.max(...xs) - Math.min(...xs));
  const spanY = Math.max(1e-9, Math.max(...ys) - Math.min(...ys));
  const circles = payload.coordinates
    .map((c) => {
      const cx = 30 + ((c.x - Math.min(...xs)) / spanX) * (size - 60);
      const cy = 30 + ((c.y - Math.min(...ys)) / spanY) * (size - 60);
      const r = 8 + Math.sqrt(c.size) * 40;
      const cls = c.topic === selected ? "topic selected" : "topic";
      return (
        `<circle class="${cls}" data-topic="${c.topic}" cx="${cx.toFixed(1)}"` +
        ` cy="${cy.toFixed(1)}" r="${r.toFixed(1)}">` +
        `<title>topic ${c.topic + 1}: ${(c.size * 100).toFixed(1)}% of tokens</title>` +
        `</circle>`
      );
    })
    .join("");
  return (
    `<figure class="widget intertopic"><figcaption>Intertopic distance map</figcaption>` +
    `<svg viewBox="0 0 ${size} ${size}" role="img">${circles}</svg></figure>`
  );
}

export function renderLambdaSlider(lambda: number): string {
  return (
    `<label class="lambda">relevance λ = <output>${lambda.toFixed(1)}</output>` +
    `<input type="range" min="0" max="1" step="0.1" value="${lambda}"/></label>`
  );
}

export function renderTopicView(
  payload: TopicPayload,
  selectedTopic: number | null,
  lambda: number,
): string {
  const frequency = new Map(
    payload.top_salient_terms.map((t) => [t.term, t.score]),
  );
  const heading =
    selectedTopic === null
      ? "Top 30 most salient terms (all topics)"
      : `Top 30 most relevant terms for topic ${selectedTopic + 1}`;
  const terms = termsForSelection(payload, selectedTopic, lambda).slice(0, 30);
  return (
    `<section class="topic-view">` +
    renderLambdaSlider(lambda) +
    renderIntertopicMap(payload, selectedTopic) +
    renderTermBars(terms, frequency, heading) +
    `</section>`
  );
}

/** Self-contained HTML file: payload embedded, slider and cluster clicks
 * still re-rank terms without any backend. */
export function exportStandaloneHtml(payload: TopicPayload): string {
  const data = JSON.stringify(payload).replace(/</g, "\\u003c");
  return `<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8"/>
<title>Topic model export</title>
<style>
body { font: 14px sans-serif; margin: 1rem; }
.term-bars li { list-style: none; display: flex; gap: .5rem; align-items: center; }
.term-bars .score { background: #b33; height: 10px; }
.term-bars .overall { background: #36c; height: 10px; opacity: .5; }
.topic { fill: #69c; opacity: .7; cursor: pointer; }
.topic.selected { fill: #c63; }
svg { border: 1px solid #ccc; }
</style>
</head>
<body>
<h1>Topic model</h1>
<div id="root"></div>
<script id="payload" type="application/json">${data}</script>
<script>
(function () {
  var payload = JSON.parse(document.getElementById("payload").textContent);
  var state = { topic: null, lambda: 0.6 };
  function termsFor() {
    if (state.topic === null) return payload.top_salient_terms;
    var topic = payload.topics.find(function (t) { return t.topic === state.topic; });
    return topic ? topic.relevance[state.lambda.toFixed(1)] || [] : [];
  }
  function render() {
    var terms = termsFor().slice(0, 30);
    var peak = Math.max.apply(null, terms.map(function (t) { return Math.abs(t.score); }).concat([1e-12]));
    var bars = terms.map(function (t) {
      return '<li><span>' + t.term + '</span>' +
        '<div class="score" style="width:' + Math.max(1, Math.round(Math.abs(t.score) / peak * 200)) + 'px" title="' + t.score + '"></div></li>';
    }).join("");
    var topics = payload.coordinates.map(function (c) {
      var cls = c.topic === state.topic ? "topic selected" : "topic";
      return '<circle class="' + cls + '" data-topic="' + c.topic + '" cx="' + (150 + c.x * 400) + '" cy="' + (150 + c.y * 400) + '" r="' + (8 + Math.sqrt(c.size) * 40) + '"></circle>';
    }).join("");
    document.getElementById("root").innerHTML =
      '<label>relevance λ = <output>' + state.lambda.toFixed(1) + '</output> ' +
      '<input id="lambda" type="range" min="0" max="1" step="0.1" value="' + state.lambda + '"/></label>' +
      '<svg viewBox="0 0 300 300" width="300" height="300">' + topics + '</svg>' +
      '<div class="term-bars"><ol>' + bars + '</ol></div>';
    document.getElementById("lambda").addEventListener("input", function (event) {
      state.lambda = parseFloat(event.target.value);
      render();
    });
    Array.prototype.forEach.call(document.querySelectorAll(".topic"), function (node) {
      node.addEventListener("click", function () {
        var topic = parseInt(node.getAttribute("data-topic"), 10);
        state.topic = state.topic === topic ? null : topic;
        render();
      });
    });
  }
  render();
})();
</script>
</body>
</html>
`;
}
