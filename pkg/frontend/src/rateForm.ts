/**
 * Rating form: two discrete 0-5 sliders and four yes/no groups. Submit stays
 * disabled until every one of the six answers has been given; sliders count
 * as answered only after the worker moves (or touches) them.
 */

import {
  RATE_INSTRUCTIONS,
  SCALE_CRITERIA,
  SCALE_HIGH_LABEL,
  SCALE_LOW_LABEL,
  YES_NO_CRITERIA,
} from "./guidelines.js";
import type { RatingPayload, Task } from "./types.js";

export class RateForm {
  readonly root: HTMLElement;
  private readonly sliderTouched = new Map<string, boolean>();
  private readonly submitButton: HTMLButtonElement;
  private onSubmitCallback: ((payload: RatingPayload) => void) | null = null;

  constructor(doc: Document, task: Task) {
    this.root = doc.createElement("section");
    this.root.className = "rate-form";

    const intro = doc.createElement("p");
    intro.className = "instructions";
    intro.textContent = RATE_INSTRUCTIONS;
    this.root.appendChild(intro);

    this.root.appendChild(textPane(doc, "Original", task.original_text));
    this.root.appendChild(textPane(doc, "Rewritten", task.rewritten_text));

    const form = doc.createElement("form");
    form.addEventListener("submit", (event) => event.preventDefault());

    for (const criterion of SCALE_CRITERIA) {
      const row = doc.createElement("div");
      row.className = "criterion scale";
      const label = doc.createElement("label");
      label.textContent = criterion.statement;
      label.htmlFor = `slider-${criterion.field}`;
      const low = doc.createElement("span");
      low.className = "scale-label";
      low.textContent = SCALE_LOW_LABEL;
      const high = doc.createElement("span");
      high.className = "scale-label";
      high.textContent = SCALE_HIGH_LABEL;
      const slider = doc.createElement("input");
      slider.type = "range";
      slider.min = "0";
      slider.max = "5";
      slider.step = "1";
      slider.value = "0";
      slider.id = `slider-${criterion.field}`;
      slider.name = criterion.field;
      this.sliderTouched.set(criterion.field, false);
      slider.addEventListener("input", () => {
        this.sliderTouched.set(criterion.field, true);
        this.refresh();
      });
      row.append(label, low, slider, high);
      form.appendChild(row);
    }

    for (const criterion of YES_NO_CRITERIA) {
      const row = doc.createElement("fieldset");
      row.className = "criterion yesno";
      const legend = doc.createElement("legend");
      legend.textContent = criterion.question;
      row.appendChild(legend);
      for (const option of ["yes", "no"] as const) {
        const label = doc.createElement("label");
        const radio = doc.createElement("input");
        radio.type = "radio";
        radio.name = criterion.field;
        radio.value = option;
        radio.addEventListener("change", () => this.refresh());
        label.append(radio, doc.createTextNode(option));
        row.appendChild(label);
      }
      form.appendChild(row);
    }

    this.submitButton = doc.createElement("button");
    this.submitButton.type = "submit";
    this.submitButton.textContent = "Submit rating";
    this.submitButton.disabled = true;
    this.submitButton.addEventListener("click", () => {
      const payload = this.payload();
      if (payload && this.onSubmitCallback) {
        this.onSubmitCallback(payload);
      }
    });
    form.appendChild(this.submitButton);
    this.root.appendChild(form);
  }

  onSubmit(callback: (payload: RatingPayload) => void): void {
    this.onSubmitCallback = callback;
  }

  private slider(field: string): HTMLInputElement {
    return this.root.querySelector(`input[name="${field}"][type="range"]`)!;
  }

  private checkedRadio(field: string): HTMLInputElement | null {
    return this.root.querySelector(`input[name="${field}"]:checked`);
  }

  complete(): boolean {
    for (const { field } of SCALE_CRITERIA) {
      if (!this.sliderTouched.get(field)) return false;
    }
    for (const { field } of YES_NO_CRITERIA) {
      if (!this.checkedRadio(field)) return false;
    }
    return true;
  }

  payload(): RatingPayload | null {
    if (!this.complete()) return null;
    return {
      sensical: Math.round(Number(this.slider("sensical").value)),
      grammatical: Math.round(Number(this.slider("grammatical").value)),
      miss_fact: this.checkedRadio("miss_fact")!.value === "yes",
      new_fact: this.checkedRadio("new_fact")!.value === "yes",
      wrong_split: this.checkedRadio("wrong_split")!.value === "yes",
      need_more_split: this.checkedRadio("need_more_split")!.value === "yes",
    };
  }

  refresh(): void {
    this.submitButton.disabled = !this.complete();
  }

  /** Test hook: drive the form the way a worker would. */
  setSlider(field: "sensical" | "grammatical", value: number): void {
    const slider = this.slider(field);
    slider.value = String(value);
    slider.dispatchEvent(new Event("input"));
  }

  setAnswer(field: string, answer: "yes" | "no"): void {
    const radio = this.root.querySelector<HTMLInputElement>(
      `input[name="${field}"][value="${answer}"]`,
    )!;
    radio.checked = true;
    radio.dispatchEvent(new Event("change"));
  }

  submitEnabled(): boolean {
    return !this.submitButton.disabled;
  }

  clickSubmit(): void {
    this.submitButton.click();
  }
}

function textPane(doc: Document, title: string, text: string): HTMLElement {
  const pane = doc.createElement("div");
  pane.className = `pane pane-${title.toLowerCase()}`;
  const heading = doc.createElement("h3");
  heading.textContent = title;
  const body = doc.createElement("p");
  body.textContent = text;
  pane.append(heading, body);
  return pane;
}
