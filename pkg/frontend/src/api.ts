import { QueryAnswer, SchemaInfo } from "./types.js";

// The console talks to exactly two endpoints.

export async function askQuestion(question: string): Promise<QueryAnswer> {
  const resp = await fetch("/api/query", {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify({ question }),
  });
  if (resp.status !== 200 && resp.status !== 422) {
    throw new Error(`query service answered ${resp.status}`);
  }
  return resp.json();
}

export async function fetchSchema(): Promise<SchemaInfo> {
  const resp = await fetch("/api/schema");
  if (!resp.ok) {
    throw new Error(`schema request answered ${resp.status}`);
  }
  return resp.json();
}
