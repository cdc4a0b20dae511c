import { QueryAnswer } from "./types.js";

export interface HistoryEntry {
  question: string;
  answer: QueryAnswer;
}

export interface ConsoleState {
  question: string;
  history: HistoryEntry[];
  selected: number;
  traceVisible: boolean;
  inFlight: boolean;
}

export function initialState(): ConsoleState {
  return {
    question: "",
    history: [],
    selected: -1,
    traceVisible: false,
    inFlight: false,
  };
}

export function withQuestion(state: ConsoleState, question: string): ConsoleState {
  return { ...state, question };
}

export function startRequest(state: ConsoleState): ConsoleState {
  return { ...state, inFlight: true };
}

export function cancelRequest(state: ConsoleState): ConsoleState {
  return { ...state, inFlight: false };
}

// history only ever grows; the new entry becomes the selected one
export function finishRequest(
  state: ConsoleState,
  question: string,
  answer: QueryAnswer,
): ConsoleState {
  const history = [...state.history, { question, answer }];
  return { ...state, history, selected: history.length - 1, inFlight: false };
}

export function selectEntry(state: ConsoleState, index: number): ConsoleState {
  if (index < 0 || index >= state.history.length) {
    return state;
  }
  return { ...state, selected: index };
}

export function toggleTrace(state: ConsoleState): ConsoleState {
  return { ...state, traceVisible: !state.traceVisible };
}

export function selectedEntry(state: ConsoleState): HistoryEntry | null {
  return state.selected >= 0 ? state.history[state.selected] : null;
}
