import { describe, expect, it } from "vitest";

import {
  RATE_INSTRUCTIONS,
  SCALE_CRITERIA,
  SCALE_HIGH_LABEL,
  SCALE_LOW_LABEL,
  YES_NO_CRITERIA,
} from "../src/guidelines.js";
import { RateForm } from "../src/rateForm.js";
import type { Task } from "../src/types.js";

// Frozen instrument wording: any drift in these strings invalidates
// comparability of collected ratings, so the test pins them verbatim.
const GOLDEN_SCALE_STATEMENTS = [
  "The Rewritten text makes sense",
  "The Rewritten text is grammatical",
];

const GOLDEN_QUESTIONS = [
  "Does the Rewritten text miss some facts that are present in the Original text?",
  "Does the Rewritten text have new facts that are not present in the Original text?",
  "Does the Rewritten text split the Original text at the wrong place or unnecessarily?",
  "Does the Rewritten text have one or more sentences that should be further split?",
];

const GOLDEN_INSTRUCTIONS =
  "Read the two pieces of text below. The second text is an attempt to " +
  "rewrite the first text, by splitting and rephrasing it into several " +
  "shorter sentences to be understood more easily. Your job is to judge if " +
  "this rewrite is good.";

const task: Task = {
  task_id: "t1",
  kind: "rate",
  pair_id: "p1",
  original_text: "Original text here .",
  assigned_to: "w",
  rewrite_id: "r1",
  rewritten_text: "Rewrite here .",
};

describe("golden criteria wording", () => {
  it("scale statements match the frozen text in order", () => {
    expect(SCALE_CRITERIA.map((c) => c.statement)).toEqual(GOLDEN_SCALE_STATEMENTS);
  });

  it("yes/no questions match the frozen text in order", () => {
    expect(YES_NO_CRITERIA.map((c) => c.question)).toEqual(GOLDEN_QUESTIONS);
  });

  it("rating instructions match the frozen text", () => {
    expect(RATE_INSTRUCTIONS).toBe(GOLDEN_INSTRUCTIONS);
  });

  it("slider endpoint labels are the agree/disagree pair", () => {
    expect(SCALE_LOW_LABEL).toBe("Strongly Disagree");
    expect(SCALE_HIGH_LABEL).toBe("Strongly Agree");
  });

  it("rendered form shows every criterion verbatim", () => {
    const form = new RateForm(document, task);
    const text = form.root.textContent ?? "";
    for (const statement of GOLDEN_SCALE_STATEMENTS) {
      expect(text).toContain(statement);
    }
    for (const question of GOLDEN_QUESTIONS) {
      expect(text).toContain(question);
    }
    expect(text).toContain(GOLDEN_INSTRUCTIONS);
  });
});
