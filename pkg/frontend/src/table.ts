import type { PriceInfo, RankedSolverInfo, RecommendResponse } from "./api";
import { ApiError } from "./api";

export interface TableHandlers {
  fetchPrice: (solverId: string) => Promise<PriceInfo>;
  onBack: () => void;
}

function capacity(solver: RankedSolverInfo): string {
  return solver.kind === "qpu"
    ? `${solver.maxQubits} qubits`
    : `${solver.maxVariables} variables`;
}

function estimatedQubits(
  solver: RankedSolverInfo,
  response: RecommendResponse,
): string {
  // Hybrid solvers take the problem as variables; no embedding happens.
  if (solver.kind !== "qpu" || !solver.topology) return "";
  const estimate = response.numQubits[solver.topology];
  return estimate === undefined ? "" : String(estimate);
}

export function formatPrice(price: PriceInfo): string {
  return `${price.amount} ${price.currency} ${price.unit}`;
}

function priceCell(
  solver: RankedSolverInfo,
  handlers: TableHandlers,
): HTMLTableCellElement {
  const cell = document.createElement("td");
  cell.className = "price-cell";
  const button = document.createElement("button");
  button.type = "button";
  button.className = "price";
  button.dataset.solverId = solver.id;
  button.textContent = "Show price";
  button.addEventListener("click", () => {
    button.disabled = true;
    handlers
      .fetchPrice(solver.id)
      .then((price) => {
        cell.textContent = formatPrice(price);
      })
      .catch((err: unknown) => {
        cell.textContent = describePriceFailure(err);
        cell.classList.add("price-unavailable");
      });
  });
  cell.appendChild(button);
  return cell;
}

export function describePriceFailure(err: unknown): string {
  if (err instanceof ApiError) {
    if (err.status === 503) {
      const stale = err.problem?.stalePrice;
      return stale
        ? `provider unavailable; last known ${formatPrice(stale)}`
        : "provider unavailable";
    }
    if (err.status === 404) return "no price listed";
  }
  return "price lookup failed";
}

/**
 * Render the ranked solver table. Rows appear exactly in response order;
 * sorting already happened on the server and is never repeated here.
 */
export function renderResults(
  response: RecommendResponse,
  handlers: TableHandlers,
): HTMLElement {
  const container = document.createElement("section");
  container.className = "results";

  const summary = document.createElement("p");
  summary.className = "estimate-summary";
  const perTopology = Object.entries(response.numQubits)
    .map(([name, qubits]) => `${name}: ${qubits}`)
    .join(", ");
  summary.textContent =
    `${response.numVar} logical variables; estimated qubits by topology ` +
    `(${perTopology}); ${response.sortMode} ranking`;
  container.appendChild(summary);

  if (response.noCandidates) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent =
      "No solver in the registry can fit this problem. " +
      "Try a smaller instance or register larger hardware.";
    container.appendChild(empty);
  } else {
    container.appendChild(buildTable(response, handlers));
  }

  const back = document.createElement("button");
  back.type = "button";
  back.className = "back";
  back.textContent = "Back";
  back.addEventListener("click", () => handlers.onBack());
  container.appendChild(back);

  return container;
}

function buildTable(
  response: RecommendResponse,
  handlers: TableHandlers,
): HTMLTableElement {
  const withScores = response.sortMode === "benchmarked";
  const table = document.createElement("table");
  table.className = "result-table";

  const head = document.createElement("thead");
  const headRow = document.createElement("tr");
  const columns = ["Rank", "Solver", "Type", "Capacity", "Est. qubits"];
  if (withScores) columns.push("Score");
  columns.push("Price");
  for (const column of columns) {
    const th = document.createElement("th");
    th.textContent = column;
    headRow.appendChild(th);
  }
  head.appendChild(headRow);
  table.appendChild(head);

  const body = document.createElement("tbody");
  for (const solver of response.rankedSolvers) {
    const row = document.createElement("tr");
    row.dataset.solverId = solver.id;
    const cells = [
      String(solver.rank),
      solver.name,
      solver.kind,
      capacity(solver),
      estimatedQubits(solver, response),
    ];
    if (withScores) {
      cells.push(
        solver.solutionQuality === undefined
          ? ""
          : String(solver.solutionQuality),
      );
    }
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text;
      row.appendChild(td);
    }
    row.appendChild(priceCell(solver, handlers));
    body.appendChild(row);
  }
  table.appendChild(body);
  return table;
}
