import { describe, expect, it } from "vitest";

import { SeverityMatrixView } from "../src/severity.js";
import { decideSubmit, emptySelection, formatScore } from "../src/state.js";
import { MATRIX_PAYLOAD } from "./fixtures.js";

const matrix = new SeverityMatrixView(MATRIX_PAYLOAD);

describe("decideSubmit", () => {
  it("disables submission while the selection is incomplete", () => {
    const state = emptySelection();
    expect(decideSubmit(state, matrix).canSubmit).toBe(false);
    state.span = { start: 0, end: 4 };
    expect(decideSubmit(state, matrix).canSubmit).toBe(false);
    state.issueType = "Omission";
    expect(decideSubmit(state, matrix).canSubmit).toBe(false);
  });

  it("previews the severity for a valid pair", () => {
    const state = {
      span: { start: 0, end: 4 },
      issueType: "Omission",
      syntacticLabel: "Subject",
    };
    const decision = decideSubmit(state, matrix);
    expect(decision.canSubmit).toBe(true);
    expect(decision.severity).toBe("Critical");
    expect(decision.invalidCellLabels).toBeNull();
  });

  it("disables N/A pairs and surfaces the valid labels", () => {
    const state = {
      span: { start: 0, end: 4 },
      issueType: "PositiveNegativeAspect",
      syntacticLabel: "Object",
    };
    const decision = decideSubmit(state, matrix);
    expect(decision.canSubmit).toBe(false);
    expect(decision.severity).toBeNull();
    expect(decision.invalidCellLabels).toEqual(["Predicate", "Attribute"]);
  });
});

describe("formatScore", () => {
  it("renders two decimal places", () => {
    expect(formatScore(100)).toBe("100.00");
    expect(formatScore(89.375)).toBe("89.38");
    expect(formatScore(-25)).toBe("-25.00");
  });

  it("renders n/a for missing scores", () => {
    expect(formatScore(null)).toBe("n/a");
    expect(formatScore(undefined)).toBe("n/a");
  });
});
