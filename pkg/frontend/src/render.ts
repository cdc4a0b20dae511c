// Every function here maps state to an HTML string and nothing else;
// the DOM wiring in main.ts decides where the strings land.

import { HistoryEntry, ConsoleState } from "./state.js";
import {
  MappingStep,
  QueryFailure,
  QuerySuccess,
  ResultTable,
  SchemaInfo,
  Trace,
  isFailure,
} from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderResultTable(table: ResultTable): string {
  const head = table.columns
    .map((column) => `<th>${escapeHtml(column)}</th>`)
    .join("");
  const body = table.rows
    .map(
      (row) =>
        `<tr>${row.map((cell) => `<td>${escapeHtml(cell)}</td>`).join("")}</tr>`,
    )
    .join("");
  return (
    `<table class="result-table"><thead><tr>${head}</tr></thead>` +
    `<tbody>${body}</tbody></table>`
  );
}

function renderSuccess(answer: QuerySuccess): string {
  const sql = answer.sql
    .map((query) => `<code class="sql">${escapeHtml(query)}</code>`)
    .join("");
  const tables = answer.results.map(renderResultTable).join("");
  return (
    `<div class="answer"><span class="template">template ${escapeHtml(answer.template)}</span>` +
    `${sql}<div class="tables">${tables}</div></div>`
  );
}

export function renderFailure(failure: QueryFailure): string {
  const words = Array.isArray(failure.error.detail["words"])
    ? (failure.error.detail["words"] as string[])
    : [];
  const offenders = words.length
    ? `<span class="offenders">${words
        .map((word) => `<strong>${escapeHtml(word)}</strong>`)
        .join(", ")}</span>`
    : "";
  return (
    `<div class="stage-error"><span class="stage">${escapeHtml(failure.error.stage)}</span> ` +
    `${escapeHtml(failure.error.message)} ${offenders}</div>`
  );
}

export function renderAnswer(entry: HistoryEntry): string {
  return isFailure(entry.answer)
    ? renderFailure(entry.answer)
    : renderSuccess(entry.answer);
}

function mappingLine(step: MappingStep): string {
  if (step.kind === "trim") {
    return `<li class="trim">the string after removing last word is "${escapeHtml(step.text)}"</li>`;
  }
  return (
    `<li class="match">the string "${escapeHtml(step.text)}" mapped with ` +
    `rule symbol: ${escapeHtml(step.symbol ?? "")}</li>`
  );
}

function section(title: string, body: string): string {
  return `<section><h3>${title}</h3>${body}</section>`;
}

export function renderTrace(trace: Trace): string {
  const parts: string[] = [];

  const unknown = trace.unknown_words ?? [];
  parts.push(
    section(
      "Checking Words",
      `<p>${escapeHtml(trace.remainder ?? trace.question)}</p>` +
        (unknown.length
          ? `<p class="bad">not in the data dictionary: ${escapeHtml(unknown.join(", "))}</p>`
          : `<p>all words found in the data dictionary</p>`),
    ),
  );

  if (trace.raw_tokens) {
    const tokens = trace.raw_tokens
      .map((token, i) => `<li>[${i}] ${escapeHtml(token)}</li>`)
      .join("");
    parts.push(section("Tokenisation", `<ol class="tokens">${tokens}</ol>`));
  }

  if (trace.escaped_tokens) {
    const text = trace.escaped_tokens.map((t) => t.word).join(" ");
    parts.push(section("Removing Excessive Words", `<p>${escapeHtml(text)}</p>`));
  }

  if (trace.mapping) {
    const lines = trace.mapping.map(mappingLine).join("");
    parts.push(section("Mapping Rules", `<ul class="mapping">${lines}</ul>`));
  }

  if (trace.elements) {
    const rows = trace.elements
      .map(
        (e) =>
          `<li>${escapeHtml(e.category)}: ${escapeHtml(e.symbol)} ` +
          `(${escapeHtml(e.description)})</li>`,
      )
      .join("");
    parts.push(section("Identifying SQL Elements", `<ul>${rows}</ul>`));
  }

  if (trace.template) {
    parts.push(
      section(
        "Mapping SQL Template",
        `<p>template code <code>${escapeHtml(trace.template)}</code>` +
          (trace.builder ? ` &rarr; ${escapeHtml(trace.builder)}` : "") +
          `</p>`,
      ),
    );
  }

  if (trace.sql) {
    const queries = trace.sql
      .map((query) => `<code class="sql">${escapeHtml(query)}</code>`)
      .join("");
    parts.push(section("Constructing SQL Query", queries));
  }

  return `<div class="trace">${parts.join("")}</div>`;
}

export function renderTracePanel(entry: HistoryEntry | null, visible: boolean): string {
  if (entry === null) {
    return `<p class="hint">ask a question first</p>`;
  }
  if (!visible) {
    return "";
  }
  return renderTrace(entry.answer.trace);
}

export function renderHistory(state: ConsoleState): string {
  const items = state.history
    .map((entry, i) => {
      const classes = ["entry"];
      if (i === state.selected) {
        classes.push("selected");
      }
      if (isFailure(entry.answer)) {
        classes.push("failed");
      }
      return (
        `<li class="${classes.join(" ")}" data-index="${i}">` +
        `${escapeHtml(entry.question)}</li>`
      );
    })
    .join("");
  return `<ol class="history">${items}</ol>`;
}

export function renderSchema(schema: SchemaInfo): string {
  const tables = schema.tables
    .map((table) => {
      const attributes = table.attributes
        .map((a) => {
          const marker = a.key === "nil" ? "" : ` <em>(${escapeHtml(a.key)})</em>`;
          return `<li>${escapeHtml(a.name)}${marker}</li>`;
        })
        .join("");
      return `<details><summary>${escapeHtml(table.name)}</summary><ul>${attributes}</ul></details>`;
    })
    .join("");
  return `<div class="schema">${tables}</div>`;
}

export function renderBanner(message: string, retryable: boolean): string {
  const retry = retryable ? ` <button id="retry">retry</button>` : "";
  return `<div class="banner">${escapeHtml(message)}${retry}</div>`;
}
