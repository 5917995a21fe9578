import type { ParamInfo, ProblemInfo } from "./api";

export interface FormHandlers {
  onSubmit: (values: Record<string, number>) => void;
  onBack: () => void;
}

function fieldParams(problem: ProblemInfo): ParamInfo[] {
  // Only scalar size parameters become inputs. Matrix parameters stay
  // server-side defaults; the tool is meant to need nothing more than a size.
  return problem.params.filter((p) => p.kind === "positive-integer");
}

export function validateField(param: ParamInfo, raw: string): string | null {
  if (raw.trim() === "") {
    return param.required ? `${param.name} is required` : null;
  }
  const value = Number(raw);
  if (!Number.isInteger(value)) {
    return `${param.name} must be a whole number`;
  }
  const min = Math.max(1, param.min ?? 1);
  if (value < min) {
    return `${param.name} must be at least ${min}`;
  }
  return null;
}

/** Build the instance form for one problem out of its parameter schema. */
export function renderInstanceForm(
  problem: ProblemInfo,
  initial: Record<string, number>,
  handlers: FormHandlers,
): HTMLFormElement {
  const form = document.createElement("form");
  form.className = "instance-form";

  const heading = document.createElement("h2");
  heading.textContent = problem.name;
  form.appendChild(heading);

  const error = document.createElement("p");
  error.className = "form-error";
  error.hidden = true;

  for (const param of fieldParams(problem)) {
    const label = document.createElement("label");
    label.textContent = param.name;
    const input = document.createElement("input");
    input.type = "number";
    input.name = param.name;
    input.min = String(Math.max(1, param.min ?? 1));
    input.step = "1";
    if (param.required) input.required = true;
    const prior = initial[param.name];
    if (prior !== undefined) input.value = String(prior);
    label.appendChild(input);
    form.appendChild(label);
  }

  form.appendChild(error);

  const back = document.createElement("button");
  back.type = "button";
  back.className = "back";
  back.textContent = "Back";
  back.addEventListener("click", () => handlers.onBack());

  const submit = document.createElement("button");
  submit.type = "submit";
  submit.textContent = "Recommend solvers";

  form.appendChild(back);
  form.appendChild(submit);

  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const values: Record<string, number> = {};
    for (const param of fieldParams(problem)) {
      const input = form.querySelector<HTMLInputElement>(
        `input[name="${param.name}"]`,
      );
      const raw = input ? input.value : "";
      const message = validateField(param, raw);
      if (message !== null) {
        showFormError(form, message);
        return;
      }
      if (raw.trim() !== "") values[param.name] = Number(raw);
    }
    error.hidden = true;
    handlers.onSubmit(values);
  });

  return form;
}

/** Surface a validation or server-side message inline, under the fields. */
export function showFormError(form: HTMLFormElement, message: string): void {
  const error = form.querySelector<HTMLParagraphElement>(".form-error");
  if (error) {
    error.textContent = message;
    error.hidden = false;
  }
}
