/**
 * Rewrite form: original text pane, one-sentence-per-line input, and the two
 * escape flags. Submit requires at least two sentences unless a flag is set.
 */

import {
  REWRITE_EXAMPLE,
  REWRITE_INSTRUCTIONS,
  REWRITE_REQUIREMENTS,
} from "./guidelines.js";
import type { RewriteFlag, RewritePayload, Task } from "./types.js";

const FLAG_LABELS: { value: RewriteFlag; label: string }[] = [
  { value: "none", label: "No flag" },
  { value: "too_simple", label: "Too simple to split" },
  { value: "problematic", label: "Too problematic to split" },
];

export class RewriteForm {
  readonly root: HTMLElement;
  private readonly textarea: HTMLTextAreaElement;
  private readonly submitButton: HTMLButtonElement;
  private onSubmitCallback: ((payload: RewritePayload) => void) | null = null;

  constructor(doc: Document, task: Task) {
    this.root = doc.createElement("section");
    this.root.className = "rewrite-form";

    const intro = doc.createElement("p");
    intro.className = "instructions";
    intro.textContent = REWRITE_INSTRUCTIONS;
    this.root.appendChild(intro);

    this.root.appendChild(guidelinePanel(doc));

    const original = doc.createElement("div");
    original.className = "pane pane-original";
    const heading = doc.createElement("h3");
    heading.textContent = "Original";
    const body = doc.createElement("p");
    body.textContent = task.original_text;
    original.append(heading, body);
    this.root.appendChild(original);

    const form = doc.createElement("form");
    form.addEventListener("submit", (event) => event.preventDefault());

    this.textarea = doc.createElement("textarea");
    this.textarea.rows = 6;
    this.textarea.placeholder = "Write one simple sentence per line (at least two).";
    this.textarea.addEventListener("input", () => this.refresh());
    form.appendChild(this.textarea);

    const flags = doc.createElement("fieldset");
    flags.className = "flags";
    const legend = doc.createElement("legend");
    legend.textContent = "Flag this sentence instead";
    flags.appendChild(legend);
    for (const { value, label } of FLAG_LABELS) {
      const wrap = doc.createElement("label");
      const radio = doc.createElement("input");
      radio.type = "radio";
      radio.name = "flag";
      radio.value = value;
      radio.checked = value === "none";
      radio.addEventListener("change", () => this.refresh());
      wrap.append(radio, doc.createTextNode(label));
      flags.appendChild(wrap);
    }
    form.appendChild(flags);

    this.submitButton = doc.createElement("button");
    this.submitButton.type = "submit";
    this.submitButton.textContent = "Submit rewrite";
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

  onSubmit(callback: (payload: RewritePayload) => void): void {
    this.onSubmitCallback = callback;
  }

  sentences(): string[] {
    return this.textarea.value
      .split("\n")
      .map((line) => line.trim())
      .filter((line) => line.length > 0);
  }

  flag(): RewriteFlag {
    const checked = this.root.querySelector<HTMLInputElement>(
      'input[name="flag"]:checked',
    );
    return (checked?.value as RewriteFlag) ?? "none";
  }

  complete(): boolean {
    if (this.flag() !== "none") return this.sentences().length >= 1;
    return this.sentences().length >= 2;
  }

  payload(): RewritePayload | null {
    if (!this.complete()) return null;
    const flag = this.flag();
    const sentences = this.sentences();
    return {
      sentences: flag === "none" ? sentences : sentences.length ? sentences : ["-"],
      flag,
    };
  }

  refresh(): void {
    this.submitButton.disabled = !this.complete();
  }

  /** Test hooks */
  setText(text: string): void {
    this.textarea.value = text;
    this.textarea.dispatchEvent(new Event("input"));
  }

  setFlag(flag: RewriteFlag): void {
    // uncheck the group by hand: programmatic .checked skips the browser's
    // radio-group bookkeeping in some DOM implementations
    for (const radio of this.root.querySelectorAll<HTMLInputElement>(
      'input[name="flag"]',
    )) {
      radio.checked = radio.value === flag;
    }
    this.root
      .querySelector<HTMLInputElement>(`input[name="flag"][value="${flag}"]`)!
      .dispatchEvent(new Event("change"));
  }

  submitEnabled(): boolean {
    return !this.submitButton.disabled;
  }

  clickSubmit(): void {
    this.submitButton.click();
  }
}

function guidelinePanel(doc: Document): HTMLElement {
  const details = doc.createElement("details");
  details.className = "guidelines";
  const summary = doc.createElement("summary");
  summary.textContent = "Rewrite requirements and examples";
  details.appendChild(summary);

  const example = doc.createElement("div");
  example.className = "example";
  const original = doc.createElement("p");
  original.textContent = `Original: ${REWRITE_EXAMPLE.original}`;
  example.appendChild(original);
  for (const good of REWRITE_EXAMPLE.good) {
    const p = doc.createElement("p");
    p.textContent = `Rewritten (good): ${good}`;
    example.appendChild(p);
  }
  details.appendChild(example);

  const list = doc.createElement("ol");
  for (const requirement of REWRITE_REQUIREMENTS) {
    const item = doc.createElement("li");
    const title = doc.createElement("p");
    title.textContent = requirement.title;
    item.appendChild(title);
    for (const bad of requirement.badExamples) {
      const p = doc.createElement("p");
      p.className = "bad-example";
      p.textContent = `Rewritten (${bad.label}): ${bad.text}`;
      item.appendChild(p);
    }
    list.appendChild(item);
  }
  details.appendChild(list);
  return details;
}
