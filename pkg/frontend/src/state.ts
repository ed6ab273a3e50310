import type { CharSpan } from "./selection.js";
import { SeverityMatrixView } from "./severity.js";

/**
 * Current picker state for one pending annotation: the selected span plus the
 * chosen issue type and syntactic label, with the derived severity preview.
 */
export interface SelectionState {
  span: CharSpan | null;
  issueType: string | null;
  syntacticLabel: string | null;
}

export interface SubmitDecision {
  canSubmit: boolean;
  severity: string | null;
  /** set when the chosen pair is an N/A cell */
  invalidCellLabels: string[] | null;
}

export function emptySelection(): SelectionState {
  return { span: null, issueType: null, syntacticLabel: null };
}

export function decideSubmit(
  state: SelectionState,
  matrix: SeverityMatrixView,
): SubmitDecision {
  if (!state.span || !state.issueType || !state.syntacticLabel) {
    return { canSubmit: false, severity: null, invalidCellLabels: null };
  }
  const severity = matrix.lookup(state.issueType, state.syntacticLabel);
  if (severity === null) {
    return {
      canSubmit: false,
      severity: null,
      invalidCellLabels: matrix.validLabels(state.issueType),
    };
  }
  return { canSubmit: true, severity, invalidCellLabels: null };
}

export function formatScore(score: number | null | undefined): string {
  if (score === null || score === undefined) {
    return "n/a";
  }
  return score.toFixed(2);
}
