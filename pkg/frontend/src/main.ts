import { askQuestion, fetchSchema } from "./api.js";
import {
  renderAnswer,
  renderBanner,
  renderHistory,
  renderSchema,
  renderTracePanel,
} from "./render.js";
import {
  ConsoleState,
  finishRequest,
  cancelRequest,
  initialState,
  selectEntry,
  selectedEntry,
  startRequest,
  toggleTrace,
  withQuestion,
} from "./state.js";

const SAMPLES = [
  "What are the available departments?",
  "What are the available departments and faculties?",
  "What is the maximum year of establishment of departments?",
  'What is the year of establishment of department and code of department which department name equals "Department of Economics and Management"?',
];

let state: ConsoleState = initialState();

function element<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) {
    throw new Error(`missing #${id}`);
  }
  return found as T;
}

function render(): void {
  const entry = selectedEntry(state);
  element("history").innerHTML = renderHistory(state);
  element("answer").innerHTML = entry ? renderAnswer(entry) : "";
  element("trace").innerHTML = renderTracePanel(entry, state.traceVisible);
  element<HTMLButtonElement>("ask").disabled = state.inFlight;
  element<HTMLButtonElement>("trace-toggle").disabled = entry === null;

  for (const item of document.querySelectorAll<HTMLElement>(".history .entry")) {
    item.onclick = () => {
      state = selectEntry(state, Number(item.dataset["index"]));
      render();
    };
  }
}

async function submit(): Promise<void> {
  const question = element<HTMLInputElement>("question").value.trim();
  if (!question || state.inFlight) {
    return;
  }
  state = startRequest(withQuestion(state, question));
  render();
  try {
    const answer = await askQuestion(question);
    state = finishRequest(state, question, answer);
    element("banner-slot").innerHTML = "";
  } catch (err) {
    state = cancelRequest(state);
    element("banner-slot").innerHTML = renderBanner(
      `could not reach the query service (${err})`,
      true,
    );
    const retry = document.getElementById("retry");
    if (retry) {
      retry.onclick = () => void submit();
    }
  }
  render();
}

function install(): void {
  element<HTMLFormElement>("question-form").onsubmit = (event) => {
    event.preventDefault();
    void submit();
  };
  element<HTMLButtonElement>("trace-toggle").onclick = () => {
    state = toggleTrace(state);
    render();
  };

  const samples = element("samples");
  for (const sample of SAMPLES) {
    const chip = document.createElement("button");
    chip.type = "button";
    chip.className = "sample";
    chip.textContent = sample;
    chip.onclick = () => {
      element<HTMLInputElement>("question").value = sample;
      void submit();
    };
    samples.appendChild(chip);
  }

  fetchSchema()
    .then((schema) => {
      element("schema").innerHTML = renderSchema(schema);
    })
    .catch(() => {
      element("schema").innerHTML = renderBanner("schema unavailable", false);
    });

  render();
}

install();
