import type { MatrixPayload } from "./types.js";

/**
 * View over the backend-served severity matrix. The preview shown in the UI
 * is a lookup into the same cells the backend validates against, so the two
 * can never disagree.
 */
export class SeverityMatrixView {
  constructor(private readonly payload: MatrixPayload) {}

  issueTypes(): string[] {
    return this.payload.issue_types.map((i) => i.name);
  }

  aspectOf(issue: string): string | undefined {
    return this.payload.issue_types.find((i) => i.name === issue)?.aspect;
  }

  syntacticLabels(): string[] {
    return this.payload.syntactic_labels;
  }

  /** Severity name for the cell, or null when the pair is not annotatable. */
  lookup(issue: string, label: string): string | null {
    const row = this.payload.cells[issue];
    if (!row || !(label in row)) {
      throw new Error(`unknown cell (${issue}, ${label})`);
    }
    return row[label];
  }

  validLabels(issue: string): string[] {
    return this.payload.valid_labels[issue] ?? [];
  }

  weight(severity: string): number {
    return this.payload.severity_weights[severity] ?? 0;
  }
}
