// @vitest-environment node
//
// Full-stack pass: boots the Python API on the bundled example registry and
// drives the wizard DOM against it over real HTTP.

import { type ChildProcess, spawn } from "node:child_process";
import { fileURLToPath } from "node:url";

import { Window } from "happy-dom";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import type { PriceInfo, RecommendResponse } from "../src/api";
import { Wizard } from "../src/wizard";

const REGISTRY = fileURLToPath(
  new URL("../../tests/fixtures/golden_registry", import.meta.url),
);
const PORT = 18300 + Math.floor(Math.random() * 2000);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;
let serverLog = "";
const win = new Window();

async function waitForApi(): Promise<void> {
  const deadline = Date.now() + 20000;
  while (Date.now() < deadline) {
    try {
      const response = await fetch(`${BASE}/api/classes`);
      if (response.ok) return;
    } catch {
      // not listening yet
    }
    await new Promise((resolve) => setTimeout(resolve, 150));
  }
  throw new Error(`API did not come up on ${BASE}\n${serverLog}`);
}

beforeAll(async () => {
  (globalThis as Record<string, unknown>).document = win.document;
  server = spawn(
    "python3",
    ["-m", "qcadviser.cli", "serve", "--registry", REGISTRY,
     "--host", "127.0.0.1", "--port", String(PORT)],
    { stdio: ["ignore", "pipe", "pipe"] },
  );
  server.stdout?.on("data", (chunk) => (serverLog += chunk));
  server.stderr?.on("data", (chunk) => (serverLog += chunk));
  await waitForApi();
});

afterAll(() => {
  server?.kill();
});

function submitForm(root: HTMLElement, value: string): void {
  const input = root.querySelector("input[name=n]") as HTMLInputElement;
  input.value = value;
  const form = root.querySelector("form") as HTMLFormElement;
  form.dispatchEvent(
    new win.Event("submit", { bubbles: true, cancelable: true }) as never,
  );
}

function rowIds(root: HTMLElement): (string | null)[] {
  return [...root.querySelectorAll("tbody tr")].map((row) =>
    row.getAttribute("data-solver-id"),
  );
}

describe("wizard against the live API", () => {
  it("walks the three stages and mirrors the service ranking", async () => {
    const root = win.document.createElement("div") as unknown as HTMLElement;
    const wizard = new Wizard(root, new ApiClient(BASE));
    await wizard.start();

    // stage 1: only classes with problems are offered
    expect(root.querySelectorAll(".problem-group").length).toBe(1);
    const select = root.querySelector(
      'button[data-problem-id="tsp"]',
    ) as HTMLButtonElement;
    select.click();

    // stage 2: schema-driven form, one size field
    expect(wizard.state.stage).toBe("SpecifyInstance");
    expect(root.querySelectorAll("input").length).toBe(1);
    submitForm(root, "4");
    await wizard.settled();

    // stage 3: row order equals the ranking the API reports
    expect(wizard.state.stage).toBe("ShowResults");
    const direct = await fetch(`${BASE}/api/recommend`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ problemId: "tsp", params: { n: 4 } }),
    });
    const reference = (await direct.json()) as RecommendResponse;
    expect(reference.sortMode).toBe("benchmarked");
    expect(rowIds(root)).toEqual(reference.rankedSolvers.map((s) => s.id));
    const headers = [...root.querySelectorAll("th")].map((th) => th.textContent);
    expect(headers).toContain("Score");

    // price button round-trips the price endpoint
    const priceButton = root.querySelector(
      'button.price[data-solver-id="aurora-qpu"]',
    ) as HTMLButtonElement;
    priceButton.click();
    await wizard.settled();
    const priceDirect = await fetch(`${BASE}/api/solvers/aurora-qpu/price`);
    const price = (await priceDirect.json()) as PriceInfo;
    const cell = root.querySelector(".price-cell") as HTMLElement;
    expect(cell.textContent).toBe(
      `${price.amount} ${price.currency} ${price.unit}`,
    );

    // back keeps the entered size
    (root.querySelector("section.results button.back") as HTMLButtonElement).click();
    expect(wizard.state.stage).toBe("SpecifyInstance");
    expect((root.querySelector("input[name=n]") as HTMLInputElement).value).toBe("4");
  });

  it("hides the score column when no benchmark row is close enough", async () => {
    const root = win.document.createElement("div") as unknown as HTMLElement;
    const wizard = new Wizard(root, new ApiClient(BASE));
    await wizard.start();
    wizard.choose("tsp");
    submitForm(root, "40");
    await wizard.settled();

    const direct = await fetch(`${BASE}/api/recommend`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ problemId: "tsp", params: { n: 40 } }),
    });
    const reference = (await direct.json()) as RecommendResponse;
    expect(reference.sortMode).toBe("default");

    expect(wizard.state.stage).toBe("ShowResults");
    expect(rowIds(root)).toEqual(reference.rankedSolvers.map((s) => s.id));
    const headers = [...root.querySelectorAll("th")].map((th) => th.textContent);
    expect(headers).not.toContain("Score");
  });

  it("blocks an undersized instance client-side", async () => {
    const root = win.document.createElement("div") as unknown as HTMLElement;
    const wizard = new Wizard(root, new ApiClient(BASE));
    await wizard.start();
    wizard.choose("tsp");
    submitForm(root, "1");
    await wizard.settled();
    expect(wizard.state.stage).toBe("SpecifyInstance");
    const error = root.querySelector(".form-error") as HTMLElement;
    expect(error.hidden).toBe(false);
  });

  it("shows the service's own rejection inline when one gets through", async () => {
    const root = win.document.createElement("div") as unknown as HTMLElement;
    const wizard = new Wizard(root, new ApiClient(BASE));
    await wizard.start();
    wizard.choose("tsp");
    wizard.render();
    await wizard.submit({ n: 0 });
    expect(wizard.state.stage).toBe("SpecifyInstance");
    const error = root.querySelector(".form-error") as HTMLElement;
    expect(error.hidden).toBe(false);
    expect(error.textContent).toContain("at least 2");
  });
});
