import type {
  ApiClient,
  ProblemClassInfo,
  ProblemInfo,
  RecommendResponse,
} from "./api";
import { ApiError } from "./api";
import { renderInstanceForm, showFormError } from "./forms";
import { renderResults } from "./table";

export type Stage = "SelectProblem" | "SpecifyInstance" | "ShowResults";

export interface WizardState {
  stage: Stage;
  problemId: string | null;
  formValues: Record<string, number>;
  lastResponse: RecommendResponse | null;
}

export function initialState(): WizardState {
  return {
    stage: "SelectProblem",
    problemId: null,
    formValues: {},
    lastResponse: null,
  };
}

export function selectProblem(state: WizardState, problemId: string): WizardState {
  return {
    stage: "SpecifyInstance",
    problemId,
    // switching to a different problem invalidates previously entered values
    formValues: state.problemId === problemId ? state.formValues : {},
    lastResponse: state.problemId === problemId ? state.lastResponse : null,
  };
}

export function rememberValues(
  state: WizardState,
  values: Record<string, number>,
): WizardState {
  return { ...state, formValues: { ...values } };
}

/** The only transition into ShowResults; needs the successful response. */
export function applyResponse(
  state: WizardState,
  response: RecommendResponse,
): WizardState {
  return { ...state, stage: "ShowResults", lastResponse: response };
}

export function goBack(state: WizardState): WizardState {
  if (state.stage === "ShowResults") {
    return { ...state, stage: "SpecifyInstance" };
  }
  if (state.stage === "SpecifyInstance") {
    return { ...state, stage: "SelectProblem" };
  }
  return state;
}

export function renderProblemPicker(
  classes: ProblemClassInfo[],
  problemsByClass: ReadonlyMap<string, ProblemInfo[]>,
  onSelect: (problemId: string) => void,
): HTMLElement {
  const container = document.createElement("section");
  container.className = "problem-picker";

  const heading = document.createElement("h1");
  heading.textContent = "Choose a problem";
  container.appendChild(heading);

  for (const cls of classes) {
    const problems = problemsByClass.get(cls.id) ?? [];
    if (problems.length === 0) continue;

    const group = document.createElement("section");
    group.className = "problem-group";
    group.dataset.classId = cls.id;

    const title = document.createElement("h2");
    title.textContent = cls.name;
    group.appendChild(title);

    const blurb = document.createElement("p");
    blurb.className = "class-description";
    blurb.textContent = cls.description;
    group.appendChild(blurb);

    const list = document.createElement("ul");
    for (const problem of problems) {
      const item = document.createElement("li");

      const select = document.createElement("button");
      select.type = "button";
      select.className = "select-problem";
      select.dataset.problemId = problem.id;
      select.textContent = problem.name;
      select.addEventListener("click", () => onSelect(problem.id));
      item.appendChild(select);

      const toggle = document.createElement("button");
      toggle.type = "button";
      toggle.className = "toggle-description";
      toggle.textContent = "What is this?";

      const description = document.createElement("p");
      description.className = "problem-description";
      description.textContent = problem.description;
      description.hidden = true;
      toggle.addEventListener("click", () => {
        description.hidden = !description.hidden;
      });

      item.appendChild(toggle);
      item.appendChild(description);
      list.appendChild(item);
    }
    group.appendChild(list);
    container.appendChild(group);
  }
  return container;
}

export class Wizard {
  state: WizardState = initialState();

  private classes: ProblemClassInfo[] = [];
  private problemsByClass = new Map<string, ProblemInfo[]>();
  private inFlight: AbortController | null = null;
  private pending = new Set<Promise<unknown>>();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  /** Await every request the wizard started; for tests and shutdown. */
  async settled(): Promise<void> {
    while (this.pending.size > 0) {
      await Promise.allSettled([...this.pending]);
    }
  }

  private track<T>(promise: Promise<T>): Promise<T> {
    this.pending.add(promise);
    promise.finally(() => this.pending.delete(promise)).catch(() => {});
    return promise;
  }

  async start(): Promise<void> {
    this.classes = await this.track(this.api.listClasses());
    const lists = await this.track(
      Promise.all(this.classes.map((cls) => this.api.listProblems(cls.id))),
    );
    this.problemsByClass = new Map(
      this.classes.map((cls, index) => [cls.id, lists[index]]),
    );
    this.render();
  }

  private findProblem(problemId: string): ProblemInfo | null {
    for (const problems of this.problemsByClass.values()) {
      const hit = problems.find((p) => p.id === problemId);
      if (hit) return hit;
    }
    return null;
  }

  choose(problemId: string): void {
    this.state = selectProblem(this.state, problemId);
    this.render();
  }

  back(): void {
    this.inFlight?.abort();
    this.state = goBack(this.state);
    this.render();
  }

  submit(values: Record<string, number>): Promise<void> {
    this.state = rememberValues(this.state, values);
    // at most one recommend request lives at a time
    this.inFlight?.abort();
    const controller = new AbortController();
    this.inFlight = controller;
    const problemId = this.state.problemId;
    if (problemId === null) return Promise.resolve();

    const request = this.api
      .recommend(problemId, values, controller.signal)
      .then((response) => {
        if (controller.signal.aborted) return;
        this.state = applyResponse(this.state, response);
        this.render();
      })
      .catch((err: unknown) => {
        if (controller.signal.aborted) return;
        const form = this.root.querySelector<HTMLFormElement>("form");
        if (form) {
          const message =
            err instanceof ApiError
              ? err.message
              : "the recommendation service is unreachable";
          showFormError(form, message);
        }
      });
    return this.track(request);
  }

  private fetchPrice = (solverId: string) =>
    this.track(this.api.price(solverId));

  render(): void {
    this.root.replaceChildren();
    if (this.state.stage === "SelectProblem") {
      this.root.appendChild(
        renderProblemPicker(this.classes, this.problemsByClass, (id) =>
          this.choose(id),
        ),
      );
      return;
    }
    if (this.state.stage === "SpecifyInstance") {
      const problem = this.findProblem(this.state.problemId ?? "");
      if (!problem) {
        this.state = initialState();
        this.render();
        return;
      }
      this.root.appendChild(
        renderInstanceForm(problem, this.state.formValues, {
          onSubmit: (values) => void this.submit(values),
          onBack: () => this.back(),
        }),
      );
      return;
    }
    const response = this.state.lastResponse;
    if (!response) {
      // ShowResults without a response cannot happen via the transitions
      this.state = initialState();
      this.render();
      return;
    }
    this.root.appendChild(
      renderResults(response, {
        fetchPrice: this.fetchPrice,
        onBack: () => this.back(),
      }),
    );
  }
}
