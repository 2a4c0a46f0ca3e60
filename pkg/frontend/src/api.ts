/** Minimal typed client over the rating service HTTP API. */

import type { Acknowledgment, NextTaskResponse, Submission, TaskKind } from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function check(response: Response): Promise<any> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(body.detail ?? response.statusText, response.status);
  }
  return body;
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  async registerWorker(workerId: string): Promise<void> {
    await check(
      await fetch(`${this.base}/api/workers`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ worker_id: workerId }),
      }),
    );
  }

  async nextTask(workerId: string, kind: TaskKind): Promise<NextTaskResponse> {
    const params = new URLSearchParams({ worker_id: workerId, kind });
    return check(await fetch(`${this.base}/api/tasks/next?${params}`));
  }

  async submit(submission: Submission): Promise<Acknowledgment> {
    return check(
      await fetch(`${this.base}/api/submissions`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(submission),
      }),
    );
  }
}
