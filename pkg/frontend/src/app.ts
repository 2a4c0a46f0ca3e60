/**
 * Single-page flow: remember the worker id locally, pull the next task of the
 * chosen kind, render the matching form, post the submission, repeat. Server
 * rejections surface in a banner with the form state intact; an empty pool
 * shows the done screen.
 */

import { ApiClient, ApiError } from "./api.js";
import { RateForm } from "./rateForm.js";
import { RewriteForm } from "./rewriteForm.js";
import type { Task, TaskKind } from "./types.js";

const WORKER_KEY = "splitrephrase.worker_id";

export class App {
  private currentTask: Task | null = null;

  constructor(
    private readonly doc: Document,
    private readonly api: ApiClient,
    private readonly storage: Storage,
  ) {}

  mount(): void {
    const saved = this.storage.getItem(WORKER_KEY);
    if (saved) {
      const input = this.doc.querySelector<HTMLInputElement>("#worker-id");
      if (input) input.value = saved;
    }
    this.doc
      .querySelector("#start-rewrite")
      ?.addEventListener("click", () => void this.start("rewrite"));
    this.doc
      .querySelector("#start-rate")
      ?.addEventListener("click", () => void this.start("rate"));
  }

  workerId(): string {
    const input = this.doc.querySelector<HTMLInputElement>("#worker-id");
    return input?.value.trim() ?? "";
  }

  private stage(): HTMLElement {
    return this.doc.querySelector("#stage")!;
  }

  private banner(message: string, kind: "error" | "info"): void {
    const banner = this.doc.querySelector<HTMLElement>("#banner")!;
    banner.textContent = message;
    banner.className = kind;
    banner.hidden = message === "";
  }

  async start(kind: TaskKind): Promise<void> {
    const workerId = this.workerId();
    if (!workerId) {
      this.banner("Enter a worker id first.", "error");
      return;
    }
    this.storage.setItem(WORKER_KEY, workerId);
    try {
      await this.api.registerWorker(workerId);
    } catch (error) {
      this.banner(describe(error), "error");
      return;
    }
    await this.loadNext(kind);
  }

  async loadNext(kind: TaskKind): Promise<void> {
    this.banner("", "info");
    let response;
    try {
      response = await this.api.nextTask(this.workerId(), kind);
    } catch (error) {
      this.banner(describe(error), "error");
      return;
    }
    if (!response.task) {
      this.renderDone();
      return;
    }
    this.renderTask(response.task);
  }

  renderTask(task: Task): void {
    this.currentTask = task;
    const stage = this.stage();
    stage.replaceChildren();
    if (task.kind === "rate") {
      const form = new RateForm(this.doc, task);
      form.onSubmit((payload) => void this.submit(task, payload));
      stage.appendChild(form.root);
    } else {
      const form = new RewriteForm(this.doc, task);
      form.onSubmit((payload) => void this.submit(task, payload));
      stage.appendChild(form.root);
    }
  }

  renderDone(): void {
    this.currentTask = null;
    const stage = this.stage();
    stage.replaceChildren();
    const done = this.doc.createElement("p");
    done.id = "done-screen";
    done.textContent = "No more tasks in this pool. Thank you!";
    stage.appendChild(done);
  }

  async submit(task: Task, payload: object): Promise<void> {
    try {
      await this.api.submit({
        task_id: task.task_id,
        worker_id: this.workerId(),
        payload: payload as never,
      });
    } catch (error) {
      // rejection: keep the rendered form and its state untouched
      this.banner(describe(error), "error");
      return;
    }
    await this.loadNext(task.kind);
  }
}

function describe(error: unknown): string {
  if (error instanceof ApiError) return `Rejected: ${error.message}`;
  return `Network failure: ${String(error)} - retry when the service is back.`;
}

export function boot(): void {
  const app = new App(document, new ApiClient(""), window.localStorage);
  app.mount();
}

declare const window: Window & typeof globalThis;
if (typeof window !== "undefined" && typeof document !== "undefined" && document.querySelector("#stage")) {
  boot();
}
