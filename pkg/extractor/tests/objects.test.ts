import { describe, expect, it } from "vitest";

import { predictObjects, ScoredLabel } from "../src/objects";

const scores: ScoredLabel[] = [
  { label: "dog", score: 0.5 },
  { label: "ball", score: 0.3 },
  { label: "grass", score: 0.1 },
];

describe("object threshold rule", () => {
  it("keeps every class above the threshold", () => {
    expect(predictObjects(scores, 0.2)).toEqual(["dog", "ball"]);
  });

  it("falls back to the single top class when nothing clears the threshold", () => {
    const low: ScoredLabel[] = [
      { label: "dog", score: 0.15 },
      { label: "ball", score: 0.19 },
      { label: "grass", score: 0.02 },
    ];
    expect(predictObjects(low, 0.2)).toEqual(["ball"]);
  });

  it("returns all classes at threshold zero", () => {
    expect(predictObjects(scores, 0)).toEqual(["dog", "ball", "grass"]);
  });

  it("uses the default threshold of 0.2", () => {
    expect(predictObjects(scores)).toEqual(["dog", "ball"]);
  });

  it("rejects an empty score vector", () => {
    expect(() => predictObjects([], 0.2)).toThrow(/empty/);
  });
});
