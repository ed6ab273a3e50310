import { ApiClient, ApiError } from "./api.js";
import { captureFromSelection } from "./selection.js";
import { SeverityMatrixView } from "./severity.js";
import {
  SelectionState,
  decideSubmit,
  emptySelection,
  formatScore,
} from "./state.js";
import type {
  AnnotationPayload,
  SamplePayload,
  ScorePayload,
  TaskDescriptor,
} from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

/** Two-pane reading/annotation view plus task queue, driven by the API. */
export class AnnotatorApp {
  matrix!: SeverityMatrixView;
  tasks: TaskDescriptor[] = [];
  current: SamplePayload | null = null;
  selection: SelectionState = emptySelection();
  annotating = false;

  private taskList!: HTMLUListElement;
  private sourcePane!: HTMLDivElement;
  private summaryPane!: HTMLDivElement;
  private issueSelect!: HTMLSelectElement;
  private labelSelect!: HTMLSelectElement;
  private severityBadge!: HTMLSpanElement;
  private scoreValue!: HTMLSpanElement;
  private submitButton!: HTMLButtonElement;
  private annotateToggle!: HTMLButtonElement;
  private hint!: HTMLDivElement;
  private errorTableBody!: HTMLTableSectionElement;
  private sessionLabel!: HTMLSpanElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async init(): Promise<void> {
    this.matrix = new SeverityMatrixView(await this.api.getMatrix());
    this.buildSkeleton();
    await this.refreshTasks();
  }

  private buildSkeleton(): void {
    this.root.textContent = "";

    const header = el("header", "topbar");
    this.sessionLabel = el("span", "session-label", "");
    const scoreWrap = el("span", "score-wrap", "Running score: ");
    this.scoreValue = el("span", "score-value", "n/a");
    scoreWrap.appendChild(this.scoreValue);
    header.append(this.sessionLabel, scoreWrap);

    const taskPanel = el("section", "tasks");
    taskPanel.appendChild(el("h2", undefined, "Pending tasks"));
    this.taskList = el("ul", "task-list");
    taskPanel.appendChild(this.taskList);

    const reader = el("section", "reader");
    const sourceCol = el("div", "pane-col");
    sourceCol.appendChild(el("h2", undefined, "Source"));
    this.sourcePane = el("div", "pane source-pane");
    sourceCol.appendChild(this.sourcePane);
    const summaryCol = el("div", "pane-col");
    summaryCol.appendChild(el("h2", undefined, "Summary"));
    this.summaryPane = el("div", "pane summary-pane");
    this.summaryPane.addEventListener("mouseup", () => this.handleSummaryMouseUp());
    summaryCol.appendChild(this.summaryPane);
    reader.append(sourceCol, summaryCol);

    const controls = el("section", "controls");
    this.annotateToggle = el("button", "annotate-toggle", "Start annotating");
    this.annotateToggle.addEventListener("click", () => this.toggleAnnotating());
    this.issueSelect = el("select", "issue-select");
    this.labelSelect = el("select", "label-select");
    for (const issue of this.matrix.issueTypes()) {
      this.issueSelect.appendChild(new Option(issue, issue));
    }
    for (const label of this.matrix.syntacticLabels()) {
      this.labelSelect.appendChild(new Option(label, label));
    }
    this.issueSelect.selectedIndex = -1;
    this.labelSelect.selectedIndex = -1;
    this.issueSelect.addEventListener("change", () =>
      this.setIssueType(this.issueSelect.value),
    );
    this.labelSelect.addEventListener("change", () =>
      this.setSyntacticLabel(this.labelSelect.value),
    );
    this.severityBadge = el("span", "severity-badge", "");
    this.submitButton = el("button", "submit-button", "Add error");
    this.submitButton.disabled = true;
    this.submitButton.addEventListener("click", () => {
      void this.submitCurrent();
    });
    this.hint = el("div", "hint", "");
    controls.append(
      this.annotateToggle,
      this.issueSelect,
      this.labelSelect,
      this.severityBadge,
      this.submitButton,
      this.hint,
    );

    const tablePanel = el("section", "errors");
    tablePanel.appendChild(el("h2", undefined, "Error log"));
    const table = el("table", "error-table");
    const head = el("thead");
    const headRow = el("tr");
    for (const title of ["Span", "Text", "Issue type", "Label", "Severity", ""]) {
      headRow.appendChild(el("th", undefined, title));
    }
    head.appendChild(headRow);
    this.errorTableBody = el("tbody");
    table.append(head, this.errorTableBody);
    tablePanel.appendChild(table);

    this.root.append(header, taskPanel, reader, controls, tablePanel);
  }

  async refreshTasks(): Promise<void> {
    const payload = await this.api.getTasks();
    this.tasks = payload.tasks;
    this.sessionLabel.textContent = payload.blind
      ? `${payload.annotator} (blind session)`
      : payload.annotator;
    this.taskList.textContent = "";
    payload.tasks.forEach((task, index) => {
      const item = el("li", "task-item");
      const button = el("button", "task-open", `${task.sample_id} / ${task.target}`);
      button.addEventListener("click", () => {
        void this.openTaskByIndex(index);
      });
      item.appendChild(button);
      this.taskList.appendChild(item);
    });
    if (payload.tasks.length === 0) {
      this.taskList.appendChild(el("li", "task-item-empty", "All tasks completed."));
    }
  }

  async openTaskByIndex(index: number): Promise<void> {
    const task = this.tasks[index];
    if (!task) throw new Error(`no task at index ${index}`);
    await this.openTask(task);
  }

  async openTask(task: TaskDescriptor): Promise<void> {
    const sample = await this.api.getSample(task.sample_id, task.target);
    this.current = sample;
    this.annotating = false;
    this.annotateToggle.textContent = "Start annotating";
    this.summaryPane.classList.remove("annotatable");
    // exactly one text node per pane: DOM offsets == character offsets
    this.sourcePane.textContent = sample.source;
    this.summaryPane.textContent = sample.text;
    this.clearSelection();
    this.setScore(sample.score);
    this.renderAnnotations(sample.annotations);
    this.setHint("Read both texts first, then enable annotation.");
  }

  toggleAnnotating(): void {
    this.annotating = !this.annotating;
    this.annotateToggle.textContent = this.annotating
      ? "Reading mode"
      : "Start annotating";
    this.summaryPane.classList.toggle("annotatable", this.annotating);
    this.setHint(this.annotating ? "Select an incorrect segment in the summary." : "");
  }

  handleSummaryMouseUp(): void {
    if (!this.annotating || !this.current) return;
    const result = captureFromSelection(
      (this.root.ownerDocument.defaultView ?? window).getSelection(),
      this.summaryPane,
    );
    if (result.ok) {
      this.selection.span = result.span;
      this.setHint(
        `Selected [${result.span.start}, ${result.span.end}) ` +
          `"${this.current.text.slice(result.span.start, result.span.end)}"`,
      );
    } else {
      this.selection.span = null;
      this.setHint(
        result.reason === "outside-pane"
          ? "Select inside the summary pane only."
          : "",
      );
    }
    this.syncControls();
  }

  setIssueType(issue: string): void {
    this.selection.issueType = issue;
    this.syncControls();
  }

  setSyntacticLabel(label: string): void {
    this.selection.syntacticLabel = label;
    this.syncControls();
  }

  /** The severity preview and submit gating for the current picker state. */
  syncControls(): void {
    const decision = decideSubmit(this.selection, this.matrix);
    this.submitButton.disabled = !decision.canSubmit;
    if (decision.invalidCellLabels) {
      this.severityBadge.textContent = "N/A";
      this.severityBadge.dataset.severity = "na";
      this.setHint(
        `Not annotatable for ${this.selection.issueType}; valid labels: ` +
          decision.invalidCellLabels.join(", "),
      );
    } else if (decision.severity) {
      this.severityBadge.textContent = decision.severity;
      this.severityBadge.dataset.severity = decision.severity.toLowerCase();
    } else {
      this.severityBadge.textContent = "";
      delete this.severityBadge.dataset.severity;
    }
  }

  async submitCurrent(): Promise<void> {
    if (!this.current) return;
    const decision = decideSubmit(this.selection, this.matrix);
    if (!decision.canSubmit || !this.selection.span) return;
    try {
      const response = await this.api.postError({
        sample_id: this.current.sample_id,
        target: this.current.target,
        span: [this.selection.span.start, this.selection.span.end],
        issue_type: this.selection.issueType!,
        syntactic_label: this.selection.syntacticLabel!,
      });
      this.appendAnnotationRow(response.annotation);
      this.setScore(response.score);
      this.clearSelection();
      this.setHint("Saved.");
    } catch (error) {
      if (error instanceof ApiError) {
        const labels = (error.details.valid_labels as string[]) ?? [];
        this.setHint(
          labels.length > 0
            ? `${error.message}`
            : `Error (${error.code}): ${error.message}`,
        );
        if (error.code === "stale" || error.status === 409) {
          await this.reloadCurrent();
        }
        return;
      }
      throw error;
    }
  }

  /** Re-fetch the open sample; used to reconcile after conflicting writes. */
  async reloadCurrent(): Promise<void> {
    if (!this.current) return;
    await this.openTask({
      sample_id: this.current.sample_id,
      target: this.current.target,
    });
  }

  async deleteAnnotation(annotationId: string): Promise<void> {
    const response = await this.api.deleteError(annotationId);
    this.errorTableBody.querySelector(`tr[data-id="${annotationId}"]`)?.remove();
    this.setScore(response.score);
  }

  private renderAnnotations(annotations: AnnotationPayload[]): void {
    this.errorTableBody.textContent = "";
    for (const annotation of annotations) {
      this.appendAnnotationRow(annotation);
    }
  }

  private appendAnnotationRow(annotation: AnnotationPayload): void {
    const row = el("tr");
    row.dataset.id = annotation.id;
    const [start, end] = annotation.span;
    row.appendChild(el("td", "span-cell", `[${start}, ${end})`));
    row.appendChild(
      el("td", "text-cell", this.current ? this.current.text.slice(start, end) : ""),
    );
    row.appendChild(el("td", undefined, annotation.issue_type));
    row.appendChild(el("td", undefined, annotation.syntactic_label));
    const severityCell = el("td");
    const badge = el("span", "severity-badge", annotation.severity);
    badge.dataset.severity = annotation.severity.toLowerCase();
    severityCell.appendChild(badge);
    row.appendChild(severityCell);
    const deleteCell = el("td");
    const deleteButton = el("button", "delete-button", "delete");
    deleteButton.addEventListener("click", () => {
      void this.deleteAnnotation(annotation.id);
    });
    deleteCell.appendChild(deleteButton);
    row.appendChild(deleteCell);
    this.errorTableBody.appendChild(row);
  }

  private clearSelection(): void {
    this.selection = emptySelection();
    this.issueSelect.selectedIndex = -1;
    this.labelSelect.selectedIndex = -1;
    this.syncControls();
  }

  private setScore(score: ScorePayload | null): void {
    this.scoreValue.textContent = formatScore(score?.score);
  }

  private setHint(message: string): void {
    this.hint.textContent = message;
  }

  /** Current header value, as displayed (2 decimal places). */
  displayedScore(): string {
    return this.scoreValue.textContent ?? "";
  }
}
