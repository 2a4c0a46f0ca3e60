/** Wire types shared with the rating service API. */

export type TaskKind = "rewrite" | "rate";

export interface Task {
  task_id: string;
  kind: TaskKind;
  pair_id: string;
  original_text: string;
  assigned_to: string;
  rewrite_id: string;
  rewritten_text: string;
}

export interface NextTaskResponse {
  task: Task | null;
  status: "assigned" | "exhausted";
}

export type RewriteFlag = "none" | "too_simple" | "problematic";

export interface RatingPayload {
  sensical: number;
  grammatical: number;
  miss_fact: boolean;
  new_fact: boolean;
  wrong_split: boolean;
  need_more_split: boolean;
}

export interface RewritePayload {
  sentences: string[];
  flag: RewriteFlag;
}

export interface Submission {
  task_id: string;
  worker_id: string;
  payload: RatingPayload | RewritePayload;
}

export interface Acknowledgment {
  status: string;
  task_id: string;
}
