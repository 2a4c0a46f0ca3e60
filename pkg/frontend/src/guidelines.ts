/**
 * Worker-facing instrument text: task instructions, the six rating criteria,
 * and the rewrite requirements with their examples. Rendered verbatim; the
 * golden-text tests pin every string.
 */

export const RATE_INSTRUCTIONS =
  "Read the two pieces of text below. The second text is an attempt to " +
  "rewrite the first text, by splitting and rephrasing it into several " +
  "shorter sentences to be understood more easily. Your job is to judge if " +
  "this rewrite is good.";

export const SCALE_LOW_LABEL = "Strongly Disagree";
export const SCALE_HIGH_LABEL = "Strongly Agree";

export interface ScaleCriterion {
  field: "sensical" | "grammatical";
  statement: string;
}

export interface YesNoCriterion {
  field: "miss_fact" | "new_fact" | "wrong_split" | "need_more_split";
  question: string;
}

export const SCALE_CRITERIA: ScaleCriterion[] = [
  { field: "sensical", statement: "The Rewritten text makes sense" },
  { field: "grammatical", statement: "The Rewritten text is grammatical" },
];

export const YES_NO_CRITERIA: YesNoCriterion[] = [
  {
    field: "miss_fact",
    question:
      "Does the Rewritten text miss some facts that are present in the Original text?",
  },
  {
    field: "new_fact",
    question:
      "Does the Rewritten text have new facts that are not present in the Original text?",
  },
  {
    field: "wrong_split",
    question:
      "Does the Rewritten text split the Original text at the wrong place or unnecessarily?",
  },
  {
    field: "need_more_split",
    question:
      "Does the Rewritten text have one or more sentences that should be further split?",
  },
];

export const REWRITE_INSTRUCTIONS =
  "A long, complex sentence is hard to understand for many people. Please " +
  "try to rewrite such a sentence by splitting and rephrasing it as several " +
  "shorter and simpler sentences.";

export const REWRITE_EXAMPLE = {
  original:
    "Jonathan Thirkield, currently living in New York City, is an American " +
    "poet who is known to be prolific.",
  good: [
    "Jonathan Thirkield is an American poet. Jonathan Thirkield is known to " +
      "be prolific. Jonathan Thirkield is currently living in New York City.",
    "Jonathan Thirkield is an American poet. He is currently living in New " +
      "York City. He is known to be prolific.",
  ],
};

export interface RewriteRequirement {
  title: string;
  badExamples: { label: string; text: string }[];
}

export const REWRITE_REQUIREMENTS: RewriteRequirement[] = [
  {
    title: "Grammatical",
    badExamples: [
      {
        label: "bad: ungrammatical",
        text:
          "Jonathan Thirkield currently living in New York City. Jonathan " +
          "Thirkield is an American poet. He is known to be prolific.",
      },
    ],
  },
  {
    title: "Sensical and understandable",
    badExamples: [
      {
        label: "bad: non-sensical",
        text:
          "Jonathan Thirkield lives in prolific New York City. He is an " +
          "American poet.",
      },
    ],
  },
  {
    title:
      "Has the same meaning as the original complex sentence, with no new " +
      "facts and no missing facts",
    badExamples: [
      {
        label: "bad: new facts",
        text:
          "Jonathan Thirkield is a best-selling American poet. He is " +
          "currently living in New York City. He is known to be prolific.",
      },
      {
        label: "bad: missing fact",
        text:
          "Jonathan Thirkield is an American poet. He is currently living " +
          "in New York City.",
      },
    ],
  },
  {
    title:
      "Split into appropriate number of short sentences (at least two), not " +
      "too few or too many. If the sentence is too simple to be split, flag " +
      "it instead.",
    badExamples: [
      {
        label: "bad: too few splits",
        text:
          "Jonathan Thirkield, currently living in New York City, is an " +
          "American poet. He is known to be prolific.",
      },
      {
        label: "bad: too many splits",
        text:
          "Jonathan Thirkield is a poet. He is American. He is currently " +
          "living somewhere. That somewhere is New York City. He is " +
          "prolific. Such is known.",
      },
    ],
  },
  {
    title: "Do NOT use pronouns (it, she, he, they, this, that) if they are ambiguous",
    badExamples: [
      {
        label: "bad: ambiguous pronoun",
        text:
          "Walt Whitman is an American poet. Jonathan Thirkield is also an " +
          "American poet. He is living in New York City.",
      },
    ],
  },
];
